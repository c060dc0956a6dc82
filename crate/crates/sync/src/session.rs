//! The interactive session: a source table, its two views through the
//! pipeline, and the edits staged on each view until the next `put`.

use crate::format::{parse_document, write_tasks, Document, EditLists, FormatError};
use crate::poset_format::{parse_structure, PosetFormatError, Structure};
use crate::suites::{run_suite, UnknownSuite};
use pslens_core::iposet::{check_duplicable, verify_iposet, IPoset};
use pslens_core::lens::{Lens, PutFailure};
use pslens_core::recipe::{check_condition, gen_iposet, Condition};
use pslens_core::tasks::{
    elaborated_pipeline, plain_pipeline, Date, DtState, ElaboratedPipeline, PlainPipeline, SplitState, TaskError,
    TaskId, TaskRecord, Tasks, ViewPredicate,
};
use std::fmt;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

/// Which filters the pipeline uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Variant {
    /// Views are tables or `(A, D)` deltas.
    Plain,
    /// Views split additions into visible ones and completions or
    /// postponements.
    Elaborated,
}

/// One of the two views.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Ongoing tasks.
    Og,
    /// Tasks due today.
    Dt,
}

impl Side {
    fn index(self) -> usize {
        match self {
            Side::Og => 0,
            Side::Dt => 1,
        }
    }

    fn parse(s: &str) -> Option<Side> {
        match s {
            "og" => Some(Side::Og),
            "dt" => Some(Side::Dt),
            _ => None,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Og => "og",
            Side::Dt => "dt",
        })
    }
}

const SIDES: [Side; 2] = [Side::Og, Side::Dt];

/// A view element of either variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViewState {
    Dt(DtState),
    Split(SplitState),
}

impl fmt::Display for ViewState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViewState::Dt(DtState::Proper(t)) | ViewState::Split(SplitState::Proper(t)) => write!(f, "{t}"),
            ViewState::Dt(DtState::Delta(d)) => write!(f, "{d}"),
            ViewState::Split(SplitState::Delta(d)) => write!(f, "{d}"),
        }
    }
}

/// What `edit` has accumulated for one view: a whole table, or requests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Staged {
    Proper(Tasks),
    Edit(EditLists),
}

/// An inline edit request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Clause {
    Add { id: TaskId, name: String, due: Date, done: bool },
    Del(TaskId),
    /// Completes the source's record.
    Complete(TaskId),
    /// Moves the source's record to another day.
    Postpone(TaskId, Date),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EditSource {
    File(String),
    Clauses(Vec<Clause>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Load(String),
    Show,
    Edit(Side, EditSource),
    Put,
    Laws(Option<String>),
    Check(String),
    Save(String),
    Clear(Option<Side>),
    Help,
    Quit,
}

#[derive(Debug, thiserror::Error)]
pub enum SessionError {
    #[error("{0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{path}: {source}")]
    Structure { path: PathBuf, source: PosetFormatError },
    #[error("{0}: expected a tasks document")]
    NotATable(PathBuf),
    #[error(transparent)]
    Task(#[from] TaskError),
    #[error("task {0} is not in the source")]
    UnknownTask(TaskId),
    #[error("put failed: {0}")]
    Put(PutFailure),
    #[error(transparent)]
    Suite(#[from] UnknownSuite),
}

const HELP: &str = "\
commands:
  load <file>                 replace the source with a tasks document
  show                        print the source, both views and staged edits
  edit <og|dt> <file>         stage a tasks or delta document on a view
  edit <og|dt> <clause>; ...  stage inline requests:
                                add <id> \"<name>\" <date> [done]
                                del <id>
                                complete <id>
                                postpone <id> <date>
  put                         propagate the staged edits to the source
  clear [og|dt]               drop staged edits
  save <file>                 write the source as a tasks document
  laws [suite|fixture]        run law suites (all, fixtures, closure, recipe, tasks)
  check <file>                validate an i-poset or update-space document
  help, quit
dates are --MM-DD or Apr 1";

impl Command {
    /// `None` for blank lines and `#` comments.
    pub fn parse(line: &str) -> Result<Option<Command>, SessionError> {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return Ok(None);
        }
        let tokens = shlex::split(line).ok_or_else(|| SessionError::Parse("unbalanced quotes".into()))?;
        let (head, rest) = tokens.split_first().expect("a nonblank line has a token");
        let one = |what: &str| match rest {
            [x] => Ok(x.clone()),
            _ => Err(SessionError::Parse(format!("{head} takes {what}"))),
        };
        let none = || if rest.is_empty() { Ok(()) } else { Err(SessionError::Parse(format!("{head} takes no arguments"))) };
        let cmd = match head.as_str() {
            "load" => Command::Load(one("one file")?),
            "save" => Command::Save(one("one file")?),
            "check" => Command::Check(one("one file")?),
            "show" => none().map(|_| Command::Show)?,
            "put" => none().map(|_| Command::Put)?,
            "help" => none().map(|_| Command::Help)?,
            "quit" | "exit" => none().map(|_| Command::Quit)?,
            "laws" => match rest {
                [] => Command::Laws(None),
                [x] => Command::Laws(Some(x.clone())),
                _ => return Err(SessionError::Parse("laws takes at most one suite".into())),
            },
            "clear" => match rest {
                [] => Command::Clear(None),
                [s] => Command::Clear(Some(parse_side(s)?)),
                _ => return Err(SessionError::Parse("clear takes at most one view".into())),
            },
            "edit" => {
                let (side, args) = rest.split_first().ok_or_else(|| SessionError::Parse("edit needs og or dt".into()))?;
                let side = parse_side(side)?;
                match args {
                    [] => return Err(SessionError::Parse("edit needs a file or clauses".into())),
                    [f] if !is_clause_word(f.trim_end_matches(';')) => Command::Edit(side, EditSource::File(f.clone())),
                    _ => Command::Edit(side, EditSource::Clauses(parse_clauses(args)?)),
                }
            }
            other => return Err(SessionError::Parse(format!("unknown command `{other}`; try help"))),
        };
        Ok(Some(cmd))
    }
}

fn parse_side(s: &str) -> Result<Side, SessionError> {
    Side::parse(s).ok_or_else(|| SessionError::Parse(format!("expected og or dt, found `{s}`")))
}

fn is_clause_word(s: &str) -> bool {
    matches!(s, "add" | "del" | "complete" | "postpone")
}

/// Splits tokens into clauses at `;`, which may stand alone or end a token.
fn parse_clauses(tokens: &[String]) -> Result<Vec<Clause>, SessionError> {
    let mut groups: Vec<Vec<String>> = vec![Vec::new()];
    for t in tokens {
        let (body, ends) = match t.strip_suffix(';') {
            Some(b) => (b, true),
            None => (t.as_str(), false),
        };
        if !body.is_empty() {
            groups.last_mut().expect("nonempty").push(body.to_string());
        }
        if ends {
            groups.push(Vec::new());
        }
    }
    groups.into_iter().filter(|g| !g.is_empty()).map(|g| parse_clause(&g)).collect()
}

fn parse_date(tokens: &[String]) -> Result<(Date, usize), SessionError> {
    let bad = |s: &str| SessionError::Parse(format!("expected a date, found `{s}`"));
    let first = tokens.first().ok_or_else(|| SessionError::Parse("missing date".into()))?;
    if first.starts_with("--") || first.contains(' ') {
        return first.parse().map(|d| (d, 1)).map_err(|_| bad(first));
    }
    let two = tokens.get(1).map(|d| format!("{first} {d}")).ok_or_else(|| bad(first))?;
    two.parse().map(|d| (d, 2)).map_err(|_| bad(&two))
}

fn parse_clause(g: &[String]) -> Result<Clause, SessionError> {
    let usage = |u: &str| SessionError::Parse(format!("usage: {u}"));
    match g[0].as_str() {
        "add" => {
            let usage = || usage("add <id> \"<name>\" <date> [done]");
            let [_, id, name, rest @ ..] = g else { return Err(usage()) };
            let (due, used) = parse_date(rest)?;
            let done = match &rest[used..] {
                [] => false,
                [d] if d == "done" => true,
                _ => return Err(usage()),
            };
            Ok(Clause::Add { id: id.as_str().into(), name: name.clone(), due, done })
        }
        "del" => match g {
            [_, id] => Ok(Clause::Del(id.as_str().into())),
            _ => Err(usage("del <id>")),
        },
        "complete" => match g {
            [_, id] => Ok(Clause::Complete(id.as_str().into())),
            _ => Err(usage("complete <id>")),
        },
        "postpone" => {
            let [_, id, rest @ ..] = g else { return Err(usage("postpone <id> <date>")) };
            let (due, used) = parse_date(rest)?;
            if used != rest.len() {
                return Err(usage("postpone <id> <date>"));
            }
            Ok(Clause::Postpone(id.as_str().into(), due))
        }
        other => Err(SessionError::Parse(format!("unknown edit `{other}`; expected add, del, complete or postpone"))),
    }
}

#[derive(Clone)]
enum Pipeline {
    Plain(PlainPipeline),
    Elaborated(ElaboratedPipeline),
}

impl Pipeline {
    fn new(variant: Variant, today: Date) -> Pipeline {
        match variant {
            Variant::Plain => Pipeline::Plain(plain_pipeline(today)),
            Variant::Elaborated => Pipeline::Elaborated(elaborated_pipeline(today)),
        }
    }

    fn get(&self, t: &Tasks) -> [ViewState; 2] {
        match self {
            Pipeline::Plain(l) => {
                let (a, b) = l.get(t);
                [ViewState::Dt(a), ViewState::Dt(b)]
            }
            Pipeline::Elaborated(l) => {
                let (a, b) = l.get(t);
                [ViewState::Split(a), ViewState::Split(b)]
            }
        }
    }

    fn omega(&self) -> ViewState {
        match self {
            Pipeline::Plain(_) => ViewState::Dt(DtState::omega()),
            Pipeline::Elaborated(_) => ViewState::Split(SplitState::omega()),
        }
    }

    fn put(&self, t: &Tasks, og: &ViewState, dt: &ViewState) -> Result<Tasks, PutFailure> {
        match (self, og, dt) {
            (Pipeline::Plain(l), ViewState::Dt(a), ViewState::Dt(b)) => l.put(t, &(a.clone(), b.clone())),
            (Pipeline::Elaborated(l), ViewState::Split(a), ViewState::Split(b)) => l.put(t, &(a.clone(), b.clone())),
            _ => unreachable!("views are built for the session's variant"),
        }
    }

    fn le(&self, side: Side, a: &ViewState, b: &ViewState) -> bool {
        match (self, a, b) {
            (Pipeline::Plain(l), ViewState::Dt(a), ViewState::Dt(b)) => l.view().left.le(a, b),
            (Pipeline::Elaborated(l), ViewState::Split(a), ViewState::Split(b)) => match side {
                Side::Og => l.view().left.le(a, b),
                Side::Dt => l.view().right.le(a, b),
            },
            _ => unreachable!("views are built for the session's variant"),
        }
    }

    fn view_of(&self, pred: ViewPredicate, staged: &Staged) -> Result<ViewState, TaskError> {
        Ok(match (self, staged) {
            (Pipeline::Plain(_), Staged::Proper(t)) => ViewState::Dt(DtState::Proper(t.clone())),
            (Pipeline::Plain(_), Staged::Edit(e)) => ViewState::Dt(DtState::Delta(e.to_delta()?)),
            (Pipeline::Elaborated(_), Staged::Proper(t)) => ViewState::Split(SplitState::Proper(t.clone())),
            (Pipeline::Elaborated(_), Staged::Edit(e)) => {
                ViewState::Split(SplitState::Delta(e.to_split(pred)?))
            }
        })
    }
}

/// The result of a command: text for the user, and whether a law suite
/// produced an unexpected verdict.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub law_failure: bool,
    pub quit: bool,
}

impl Output {
    fn text(text: impl Into<String>) -> Output {
        Output { text: text.into(), ..Output::default() }
    }
}

#[derive(Clone)]
pub struct Session {
    variant: Variant,
    today: Date,
    pipeline: Pipeline,
    source: Tasks,
    views: [ViewState; 2],
    staged: [Option<Staged>; 2],
    base: PathBuf,
}

impl fmt::Debug for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Session")
            .field("variant", &self.variant)
            .field("today", &self.today)
            .field("source", &self.source)
            .field("views", &self.views)
            .field("staged", &self.staged)
            .finish()
    }
}

impl PartialEq for Session {
    /// Compares the observable state, ignoring the base directory.
    fn eq(&self, other: &Session) -> bool {
        self.variant == other.variant
            && self.today == other.today
            && self.source == other.source
            && self.views == other.views
            && self.staged == other.staged
    }
}

impl Session {
    pub fn new(variant: Variant, today: Date, source: Tasks) -> Session {
        let pipeline = Pipeline::new(variant, today);
        let views = pipeline.get(&source);
        Session { variant, today, pipeline, source, views, staged: [None, None], base: PathBuf::from(".") }
    }

    /// Relative paths in commands resolve against `dir`.
    pub fn with_base_dir(mut self, dir: impl Into<PathBuf>) -> Session {
        self.base = dir.into();
        self
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn today(&self) -> Date {
        self.today
    }

    pub fn source(&self) -> &Tasks {
        &self.source
    }

    pub fn view(&self, side: Side) -> &ViewState {
        &self.views[side.index()]
    }

    pub fn staged(&self, side: Side) -> Option<&Staged> {
        self.staged[side.index()].as_ref()
    }

    fn predicate(&self, side: Side) -> ViewPredicate {
        match side {
            Side::Og => ViewPredicate::Ongoing,
            Side::Dt => ViewPredicate::DueOn(self.today),
        }
    }

    /// The staged edit of a view as a view element, `Ω` if nothing is staged.
    pub fn staged_view(&self, side: Side) -> ViewState {
        match self.staged(side) {
            Some(s) => self.pipeline.view_of(self.predicate(side), s).expect("staged edits are validated when staged"),
            None => self.pipeline.omega(),
        }
    }

    /// The document `save` would write.
    pub fn save_text(&self) -> String {
        write_tasks(&self.source)
    }

    fn resolve(&self, file: &str) -> PathBuf {
        let p = Path::new(file);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base.join(p)
        }
    }

    fn read(&self, file: &str) -> Result<(PathBuf, String), SessionError> {
        let path = self.resolve(file);
        let text = std::fs::read_to_string(&path).map_err(|source| SessionError::Io { path: path.clone(), source })?;
        Ok((path, text))
    }

    fn read_document(&self, file: &str) -> Result<(PathBuf, Document), SessionError> {
        let (path, text) = self.read(file)?;
        let doc = parse_document(&text).map_err(|source| SessionError::Format { path: path.clone(), source })?;
        Ok((path, doc))
    }

    /// Parses and runs one line.
    pub fn execute(&mut self, line: &str) -> Result<Output, SessionError> {
        match Command::parse(line)? {
            Some(cmd) => self.run(cmd),
            None => Ok(Output::default()),
        }
    }

    /// Runs a command. A failing command leaves the session unchanged.
    pub fn run(&mut self, cmd: Command) -> Result<Output, SessionError> {
        match cmd {
            Command::Load(file) => {
                let (path, doc) = self.read_document(&file)?;
                let Document::Tasks(t) = doc else { return Err(SessionError::NotATable(path)) };
                self.views = self.pipeline.get(&t);
                self.source = t;
                self.staged = [None, None];
                Ok(Output::text(format!("loaded {} tasks", self.source.len())))
            }
            Command::Show => Ok(Output::text(self.show())),
            Command::Edit(side, src) => self.edit(side, src),
            Command::Put => self.put(),
            Command::Clear(side) => {
                for s in SIDES {
                    if side.is_none_or(|x| x == s) {
                        self.staged[s.index()] = None;
                    }
                }
                Ok(Output::default())
            }
            Command::Save(file) => {
                let path = self.resolve(&file);
                std::fs::write(&path, self.save_text()).map_err(|source| SessionError::Io { path: path.clone(), source })?;
                Ok(Output::text(format!("saved {}", file)))
            }
            Command::Laws(name) => {
                let r = run_suite(name.as_deref().unwrap_or("all"))?;
                Ok(Output { text: r.text.trim_end().to_string(), law_failure: !r.ok, quit: false })
            }
            Command::Check(file) => self.check(&file),
            Command::Help => Ok(Output::text(HELP)),
            Command::Quit => Ok(Output { quit: true, ..Output::default() }),
        }
    }

    fn show(&self) -> String {
        let mut out = format!("source: {}", self.source);
        for side in SIDES {
            out.push_str(&format!("\n{side}: {}", self.view(side)));
        }
        for side in SIDES {
            if self.staged(side).is_some() {
                out.push_str(&format!("\nstaged {side}: {}", self.staged_view(side)));
            }
        }
        out
    }

    fn edit(&mut self, side: Side, src: EditSource) -> Result<Output, SessionError> {
        let current = self.staged[side.index()].clone();
        let next = match src {
            EditSource::File(file) => match self.read_document(&file)?.1 {
                Document::Tasks(t) => Staged::Proper(t),
                Document::Edit(e) => combine(current, &e),
            },
            EditSource::Clauses(cs) => {
                let mut lists = EditLists::default();
                for c in &cs {
                    let mut one = EditLists::default();
                    match c {
                        Clause::Add { id, name, due, done } => {
                            let mut t = Tasks::new();
                            t.insert(id.clone(), TaskRecord::new(*done, name.as_str(), *due))?;
                            one.upsert = t;
                        }
                        Clause::Del(id) => {
                            one.delete.insert(id.clone());
                        }
                        Clause::Complete(id) => {
                            let mut r = self.record(id)?;
                            r.done = true;
                            one.complete = [(id.clone(), r)].into_iter().collect();
                        }
                        Clause::Postpone(id, due) => {
                            let mut r = self.record(id)?;
                            r.due = *due;
                            one.postpone = [(id.clone(), r)].into_iter().collect();
                        }
                    }
                    lists.extend(&one);
                }
                combine(current, &lists)
            }
        };
        let w = self.pipeline.view_of(self.predicate(side), &next)?;
        self.staged[side.index()] = Some(next);
        Ok(Output::text(format!("staged {side}: {w}")))
    }

    fn record(&self, id: &TaskId) -> Result<TaskRecord, SessionError> {
        self.source.get(id).cloned().ok_or_else(|| SessionError::UnknownTask(id.clone()))
    }

    fn put(&mut self) -> Result<Output, SessionError> {
        let [og, dt] = SIDES.map(|s| self.staged_view(s));
        let t = self.pipeline.put(&self.source, &og, &dt).map_err(SessionError::Put)?;
        let views = self.pipeline.get(&t);
        let mut lines = Vec::new();
        for (side, w) in SIDES.into_iter().zip([&og, &dt]) {
            if self.staged(side).is_some() {
                let kept = self.pipeline.le(side, w, &views[side.index()]);
                lines.push(format!("w ≤ v'{side}: {}", if kept { "yes" } else { "no" }));
            }
        }
        if lines.is_empty() {
            lines.push("nothing staged".into());
        }
        self.source = t;
        self.views = views;
        self.staged = [None, None];
        Ok(Output::text(lines.join("\n")))
    }

    fn check(&self, file: &str) -> Result<Output, SessionError> {
        let (path, text) = self.read(file)?;
        let s = parse_structure(&text).map_err(|source| SessionError::Structure { path, source })?;
        let verdict = |ok: bool| if ok { "yes" } else { "no" };
        let out = match s {
            Structure::IPoset(p) => {
                let dup = match check_duplicable(&p) {
                    Ok(r) if r.is_ok() => "yes".to_string(),
                    Ok(r) => format!("no\n{r}"),
                    Err(e) => format!("no ({e})"),
                };
                format!(
                    "i-poset with {} elements, least element: {}\nduplicable: {dup}",
                    p.len(),
                    verdict(p.least().is_some())
                )
            }
            Structure::Space(us) => {
                let mut out = format!("update space with {} states and {} updates", us.n_states(), us.n_updates());
                for c in Condition::ALL {
                    out.push_str(&format!("\n{c}: {}", verdict(check_condition(&us, c).is_ok())));
                }
                let g = gen_iposet(&us);
                let r = verify_iposet(&g);
                out.push_str(&format!("\ngenerated i-poset: {} elements", pslens_core::iposet::Enumerable::elements(&g).len()));
                if !r.is_ok() {
                    out.push_str(&format!("\n{r}"));
                }
                out.push_str(&format!("\nduplicable: {}", verdict(check_duplicable(&g).is_ok_and(|r| r.is_ok()))));
                out
            }
        };
        Ok(Output::text(out))
    }
}

/// Adds requests to whatever is staged. On a staged table the requests are
/// applied to the table directly.
fn combine(current: Option<Staged>, e: &EditLists) -> Staged {
    match current {
        Some(Staged::Proper(t)) => {
            Staged::Proper(t.without(&e.delete).upsert(&e.upsert).upsert(&e.complete).upsert(&e.postpone))
        }
        Some(Staged::Edit(mut lists)) => {
            lists.extend(e);
            Staged::Edit(lists)
        }
        None => Staged::Edit(e.clone()),
    }
}

/// How a stream of commands is run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Print a prompt, report errors and keep going.
    Interactive,
    /// Echo each command and stop at the first error.
    Batch,
}

/// Exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_COMMAND_ERROR: i32 = 1;
pub const EXIT_LAW_FAILURE: i32 = 2;

/// Runs commands from `input`, returning the exit status: 1 if a command
/// failed, else 2 if a law suite failed, else 0.
pub fn run_lines(session: &mut Session, input: impl BufRead, out: &mut impl Write, err: &mut impl Write, mode: Mode) -> io::Result<i32> {
    let mut status = EXIT_OK;
    if mode == Mode::Interactive {
        write!(out, "pslens> ")?;
        out.flush()?;
    }
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        if mode == Mode::Batch && !line.trim().is_empty() && !line.trim().starts_with('#') {
            writeln!(out, "> {}", line.trim())?;
        }
        match session.execute(&line) {
            Ok(o) => {
                if !o.text.is_empty() {
                    writeln!(out, "{}", o.text)?;
                }
                if o.law_failure && status == EXIT_OK {
                    status = EXIT_LAW_FAILURE;
                }
                if o.quit {
                    break;
                }
            }
            Err(e) => {
                writeln!(err, "error: line {}: {e}", n + 1)?;
                if mode == Mode::Batch {
                    return Ok(EXIT_COMMAND_ERROR);
                }
                status = EXIT_COMMAND_ERROR;
            }
        }
        if mode == Mode::Interactive {
            write!(out, "pslens> ")?;
            out.flush()?;
        }
    }
    Ok(status)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pslens_core::tasks::scenario;

    fn session() -> Session {
        Session::new(Variant::Plain, scenario::today(), scenario::s_tl())
    }

    #[test]
    fn parses_inline_clauses() {
        let c = Command::parse("edit og add 004 \"Buy egg\" Apr 1; del 002 ; complete 003").unwrap().unwrap();
        let Command::Edit(Side::Og, EditSource::Clauses(cs)) = c else { panic!("{c:?}") };
        assert_eq!(cs.len(), 3);
        assert_eq!(
            cs[0],
            Clause::Add { id: "004".into(), name: "Buy egg".into(), due: Date::new(4, 1).unwrap(), done: false }
        );
        let c = Command::parse("edit dt postpone 003 --04-05").unwrap().unwrap();
        assert!(matches!(c, Command::Edit(Side::Dt, EditSource::Clauses(_))));
        assert_eq!(Command::parse("edit dt w.toml").unwrap(), Some(Command::Edit(Side::Dt, EditSource::File("w.toml".into()))));
        assert_eq!(Command::parse("  # note").unwrap(), None);
    }

    #[test]
    fn rejects_malformed_commands() {
        for bad in ["edit", "edit xx add 1 a Apr 1", "edit og add 1", "edit og add 1 a Apr 32", "frob", "show me", "load", "edit og \"x"] {
            assert!(Command::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn inline_add_reaches_the_source() {
        let mut s = session();
        s.execute("edit og add 004 \"Buy egg\" Apr 1").unwrap();
        let out = s.execute("put").unwrap();
        assert_eq!(out.text, "w ≤ v'og: yes");
        assert_eq!(s.source(), &scenario::s_tl_1());
        assert!(s.staged(Side::Og).is_none());
    }

    #[test]
    fn put_without_edits_keeps_the_source() {
        let mut s = session();
        assert_eq!(s.execute("put").unwrap().text, "nothing staged");
        assert_eq!(s.source(), &scenario::s_tl());
    }

    #[test]
    fn conflicting_edits_leave_the_session_unchanged() {
        let mut s = session();
        s.execute("edit og add 009 \"x\" Apr 1").unwrap();
        s.execute("edit dt del 009").unwrap();
        let before = s.clone();
        let e = s.execute("put").unwrap_err();
        assert!(matches!(&e, SessionError::Put(f) if f.reason == pslens_core::lens::FailureReason::MergeConflict), "{e}");
        assert_eq!(s, before);
    }

    #[test]
    fn invalid_edits_are_not_staged() {
        let mut s = session();
        s.execute("edit og add 1 \"x\" Apr 1").unwrap();
        let before = s.clone();
        assert!(s.execute("complete 999").is_err());
        assert!(s.execute("edit og complete 999").is_err());
        assert_eq!(s, before);
    }

    #[test]
    fn elaborated_completion_through_clauses() {
        let mut s = Session::new(Variant::Elaborated, scenario::today(), scenario::s_tl());
        s.execute("edit og del 001; complete 003").unwrap();
        assert_eq!(s.staged_view(Side::Og), ViewState::Split(SplitState::Delta(scenario::w_complete())));
        assert_eq!(s.execute("put").unwrap().text, "w ≤ v'og: yes");
        assert_eq!(s.source(), &scenario::s_completed());
    }

    #[test]
    fn elaborated_views_reject_misplaced_requests() {
        let mut s = Session::new(Variant::Elaborated, scenario::today(), scenario::s_tl());
        assert!(matches!(s.execute("edit dt complete 001"), Err(SessionError::Task(_))));
        assert!(s.execute("edit og postpone 001 Apr 5").is_ok());
    }

    #[test]
    fn batch_stops_at_the_first_error() {
        let mut s = session();
        let script = "show\nfrob\nput\n";
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_lines(&mut s, script.as_bytes(), &mut out, &mut err, Mode::Batch).unwrap();
        assert_eq!(code, EXIT_COMMAND_ERROR);
        let out = String::from_utf8(out).unwrap();
        assert!(out.contains("> show") && !out.contains("> put"));
        assert!(String::from_utf8(err).unwrap().starts_with("error: line 2:"));
    }
}
