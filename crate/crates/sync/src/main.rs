//! `pslens`: synchronize a to-do list through an ongoing view and a
//! due-today view, interactively or from a script, or run the law suites.

use clap::Parser;
use pslens_core::tasks::{Date, Tasks};
use pslens_sync::format::{parse_document, Document};
use pslens_sync::session::{run_lines, Mode, Session, Variant, EXIT_COMMAND_ERROR, EXIT_LAW_FAILURE, EXIT_OK};
use pslens_sync::suites::run_suite;
use std::io::{self, BufReader, IsTerminal};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "pslens", version, about)]
struct Cli {
    /// Tasks document to start from (an empty table otherwise).
    source: Option<PathBuf>,

    /// The day the due-today view shows, as --MM-DD or "Apr 1".
    #[arg(long, default_value = "--04-01", allow_hyphen_values = true)]
    today: String,

    #[arg(long, value_enum, default_value_t = Variant::Plain)]
    variant: Variant,

    /// Run commands from a file; relative paths in it resolve against its
    /// directory. Stops at the first failing command.
    #[arg(long)]
    script: Option<PathBuf>,

    /// Run a law suite (all, fixtures, closure, recipe, tasks) or a single
    /// fixture, then exit.
    #[arg(long, value_name = "SUITE", num_args = 0..=1, default_missing_value = "all")]
    laws: Option<String>,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_COMMAND_ERROR as u8)
}

fn load_source(path: &Path) -> Result<Tasks, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    match parse_document(&text).map_err(|e| format!("{}: {e}", path.display()))? {
        Document::Tasks(t) => Ok(t),
        Document::Edit(_) => Err(format!("{}: expected a tasks document", path.display())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(name) = &cli.laws {
        return match run_suite(name) {
            Ok(r) => {
                print!("{}", r.text);
                ExitCode::from(if r.ok { EXIT_OK } else { EXIT_LAW_FAILURE } as u8)
            }
            Err(e) => fail(e),
        };
    }
    let today: Date = match cli.today.parse() {
        Ok(d) => d,
        Err(e) => return fail(e),
    };
    let source = match &cli.source {
        Some(p) => match load_source(p) {
            Ok(t) => t,
            Err(e) => return fail(e),
        },
        None => Tasks::new(),
    };
    let session = Session::new(cli.variant, today, source);
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    let status = match &cli.script {
        Some(path) => {
            let file = match std::fs::File::open(path) {
                Ok(f) => f,
                Err(e) => return fail(format!("{}: {e}", path.display())),
            };
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut session = session.with_base_dir(dir);
            run_lines(&mut session, BufReader::new(file), &mut out, &mut err, Mode::Batch)
        }
        None => {
            let stdin = io::stdin();
            let mode = if stdin.is_terminal() { Mode::Interactive } else { Mode::Batch };
            let mut session = session;
            run_lines(&mut session, stdin.lock(), &mut out, &mut err, mode)
        }
    };
    match status {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => fail(e),
    }
}
