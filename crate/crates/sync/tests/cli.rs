use std::path::Path;
use std::process::{Command, Output};

fn pslens(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pslens")).args(args).current_dir(dir).output().expect("the binary runs")
}

fn scenario() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/scenario"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn elaborated_script_completes_a_task() {
    let dir = tempfile::tempdir().unwrap();
    let script = "load s_tl.toml\nedit og del 001; complete 003\nput\nsave out.toml\n";
    std::fs::write(dir.path().join("run.pslens"), script).unwrap();
    std::fs::copy(scenario().join("s_tl.toml"), dir.path().join("s_tl.toml")).unwrap();
    let o = pslens(&["--variant", "elaborated", "--script", "run.pslens"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("w ≤ v'og: yes"));
    let saved = std::fs::read_to_string(dir.path().join("out.toml")).unwrap();
    assert_eq!(saved, std::fs::read_to_string(scenario().join("s_completed.toml")).unwrap());
}

#[test]
fn a_failing_command_stops_the_script_with_status_1() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.pslens"), "show\nfrobnicate\nsave never.toml\n").unwrap();
    let o = pslens(&["--script", "run.pslens"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert!(!dir.path().join("never.toml").exists());
}

#[test]
fn conflicting_views_fail_the_put() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.pslens"), "edit og add 1 \"a\" Apr 1\nedit dt del 1\nput\n").unwrap();
    let o = pslens(&["--script", "run.pslens"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("put failed"));
}

#[test]
fn piped_stdin_runs_as_a_batch() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pslens"))
        .arg(scenario().join("s_tl.toml"))
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(b"show\nquit\nshow\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.matches("> show").count(), 1, "{text}");
    assert!(text.contains("Buy milk"));
}

#[test]
fn law_suites_report_expected_verdicts() {
    let o = pslens(&["--laws", "bad"], scenario());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("ps-stability: fails") && text.contains("result: pass"), "{text}");
    let o = pslens(&["--laws", "nope"], scenario());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_reports_on_shipped_structures() {
    let fixtures = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"));
    let dir = tempfile::tempdir().unwrap();
    let script = format!("check {0}/bool_omega.toml\ncheck {0}/g2_violation.toml\n", fixtures.display());
    std::fs::write(dir.path().join("run.pslens"), script).unwrap();
    let o = pslens(&["--script", "run.pslens"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("least element: yes\nduplicable: yes"), "{text}");
    assert!(text.contains("G2: no") && text.ends_with("duplicable: no\n"), "{text}");
}
