//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

use pslens_core::iposet::{check_duplicable, Enumerable, IPoset, Point};
use pslens_core::laws::fixtures::{bad, const_unit_ns, natural, put_nonmono1};
use pslens_core::laws::{check_laws, LawId, Universe, Verdict, Witness};
use pslens_core::lens::Lens;
use pslens_core::recipe::fixtures::{enumerate_spaces, g1_violation, g2_violation, g3_violation};
use pslens_core::recipe::{check_condition, check_sufficient, gen_iposet, Condition, Sufficient, UpdateSpace};
use pslens_core::tasks::{
    bounded_dt, elaborated_pipeline, plain_pipeline, Date, DtDomain, DtState, SplitState, TaskId, TaskRecord, Tasks,
    ViewPredicate,
};
use pslens_sync::format::{parse_document, write_dt, write_tasks, Document, EditLists};
use pslens_sync::session::{Session, Variant};
use pslens_sync::suites::{closure_outcomes, closure_suite_domains, desk_ids, desk_records};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn scenario_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenario")
}

fn golden(name: &str) -> String {
    let path = scenario_dir().join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn golden_tasks(name: &str) -> Tasks {
    match parse_document(&golden(name)).unwrap_or_else(|e| panic!("{name}: {e}")) {
        Document::Tasks(t) => t,
        Document::Edit(_) => panic!("{name} is not a tasks document"),
    }
}

fn golden_edit(name: &str) -> EditLists {
    match parse_document(&golden(name)).unwrap_or_else(|e| panic!("{name}: {e}")) {
        Document::Edit(e) => e,
        Document::Tasks(_) => panic!("{name} is not a delta document"),
    }
}

fn apr1() -> Date {
    Date::new(4, 1).expect("valid")
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn same_bytes(what: &str, got: &str, file: &str) -> Result<(), String> {
    ensure(got == golden(file), || format!("{what} differs from {file}:\n{got}"))
}

fn scenario_exactness() -> Outcome {
    let start = Instant::now();
    let l = plain_pipeline(apr1());
    let s_tl = golden_tasks("s_tl.toml");
    let (og, dt) = l.get(&s_tl);
    same_bytes("get(s_tl).og", &write_dt(&og), "v_og.toml")?;
    same_bytes("get(s_tl).dt", &write_dt(&dt), "v_dt.toml")?;

    let w_og = DtState::Delta(golden_edit("w_og.toml").to_delta().map_err(|e| e.to_string())?);
    let w_dt = DtState::Delta(golden_edit("w_dt.toml").to_delta().map_err(|e| e.to_string())?);
    let merged = DtDomain.merge(&w_og, &w_dt).ok_or("w_og and w_dt do not merge")?;
    same_bytes("w_og ⊕ w_dt", &write_dt(&merged), "w_merged.toml")?;

    for (views, src, vog, vdt) in [
        ((w_og.clone(), DtState::omega()), "s_tl_1.toml", "v_og_1.toml", "v_dt_1.toml"),
        ((w_og, w_dt), "s_tl_2.toml", "v_og_2.toml", "v_dt_2.toml"),
    ] {
        let s = l.put(&s_tl, &views).map_err(|e| format!("put for {src} failed: {e}"))?;
        same_bytes("put", &write_tasks(&s), src)?;
        let (og, dt) = l.get(&s);
        same_bytes("get(put).og", &write_dt(&og), vog)?;
        same_bytes("get(put).dt", &write_dt(&dt), vdt)?;
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{:.1?}", start.elapsed()))
}

fn elaborated_scenario() -> Outcome {
    let l = elaborated_pipeline(apr1());
    let s_tl = golden_tasks("s_tl.toml");
    let w = golden_edit("w_complete.toml").to_split(ViewPredicate::Ongoing).map_err(|e| e.to_string())?;
    let s = l.put(&s_tl, &(SplitState::Delta(w), SplitState::omega())).map_err(|e| format!("put failed: {e}"))?;
    same_bytes("put", &write_tasks(&s), "s_completed.toml")?;
    Ok(String::from("001 deleted, 003 completed"))
}

fn verdicts<L>(l: &L, laws: &[LawId]) -> Result<Vec<pslens_core::laws::LawReport<Point, Point>>, String>
where
    L: Lens,
    L::Source: IPoset<Elem = Point> + Enumerable,
    L::View: IPoset<Elem = Point> + Enumerable,
{
    check_laws(l, laws, &Universe::exhaustive(l)).map_err(|e| e.to_string())
}

fn counterexamples() -> Outcome {
    let start = Instant::now();

    let b = bad(5);
    let r = verdicts(&b, &[LawId::WeakWb, LawId::PsStability])?;
    ensure(r[0].holds(), || "bad fails weak-wb".into())?;
    ensure(r[1].verdict == Verdict::Fails, || "bad passes ps-stability".into())?;
    let two = b.source().at(&natural(2));
    match &r[1].counterexample {
        Some(Witness::PsStability { s0, .. }) if *s0 == two => {}
        other => return Err(format!("bad: unexpected witness {other:?}")),
    }
    // s0 = 2̲ gives s = 1̲; with s' = s, put (s', ()) = 0̲ is not above s.
    let unit = b.view().at("()");
    let s = b.put(&two, &unit).map_err(|e| e.to_string())?;
    let s2 = b.put(&s, &unit).map_err(|e| e.to_string())?;
    ensure(b.source().label(s) == natural(1) && !b.source().le(&s, &s2), || "bad: 2̲ is not a witness".into())?;

    let c = const_unit_ns();
    let r = verdicts(&c, &[LawId::Wb, LawId::WPutGet])?;
    ensure(r[0].holds(), || "constUnit_ns fails wb".into())?;
    let omega = c.view().at("Ω");
    let at = c.source().at("()");
    match &r[1].counterexample {
        Some(Witness::WPutGet { s0, v, .. }) if *s0 == at && *v == omega => {}
        other => return Err(format!("constUnit_ns: unexpected witness {other:?}")),
    }
    let s = c.put(&at, &omega).map_err(|e| e.to_string())?;
    ensure(s == c.source().at("Ω") && c.put(&at, &c.get(&s)) == Ok(at) && at != s, || {
        "constUnit_ns: ((), Ω) is not a witness".into()
    })?;

    let p = put_nonmono1();
    ensure(verdicts(&p, &[LawId::Wb])?[0].holds(), || "putNonmono1 fails wb".into())?;
    let src = p.source();
    let (vu, omega, ff) = (p.view().at("()"), src.at("Ω"), src.at("False"));
    let hi = p.put(&omega, &vu).map_err(|e| e.to_string())?;
    let lo = p.put(&ff, &vu).map_err(|e| e.to_string())?;
    ensure(src.label(hi) == "True" && src.label(lo) == "False" && src.le(&omega, &ff) && !src.le(&hi, &lo), || {
        "putNonmono1: put is monotone at (Ω, False)".into()
    })?;

    within(start, Duration::from_secs(5))?;
    Ok(format!("{:.1?}", start.elapsed()))
}

fn closure() -> (Outcome, Outcome) {
    let start = Instant::now();
    let domains = closure_suite_domains();
    let outcomes = closure_outcomes(&domains);
    let took = start.elapsed();
    let unlawful: Vec<_> = outcomes.iter().filter(|o| !o.law(LawId::Wb)).collect();
    let wb = if let Some(o) = unlawful.first() {
        Err(format!("{} of {} lenses fail wb, first {} over {}", unlawful.len(), outcomes.len(), o.lens, o.domain))
    } else if took >= Duration::from_secs(60) {
        Err(format!("took {took:.1?}"))
    } else {
        Ok(format!("{} domains, {} lenses, {took:.1?}", domains.len(), outcomes.len()))
    };
    let weak = outcomes.iter().filter(|o| o.law(LawId::WeakWb)).count();
    let exceptions: Vec<_> = outcomes.iter().filter(|o| !o.lemmas_hold()).collect();
    let lemmas = match exceptions.first() {
        Some(o) => Err(format!("{} exceptions, first {} over {}", exceptions.len(), o.lens, o.domain)),
        None => Ok(format!("{weak} weakly well-behaved lenses, 0 exceptions")),
    };
    (wb, lemmas)
}

fn duplicable(us: &UpdateSpace) -> bool {
    check_duplicable(&gen_iposet(us)).is_ok_and(|r| r.is_ok())
}

fn recipe() -> Outcome {
    let spaces = enumerate_spaces(2, 3);
    let satisfying: Vec<_> =
        spaces.iter().filter(|us| Condition::ALL.iter().all(|&c| check_condition(us, c).is_ok())).collect();
    ensure(satisfying.len() >= 20, || format!("only {} spaces satisfy G1-G3", satisfying.len()))?;
    if let Some(us) = satisfying.iter().find(|us| !duplicable(us)) {
        return Err(format!("a G1-G3 space is not duplicable: {us:?}"));
    }
    for (us, c) in [(g1_violation(), Condition::G1), (g2_violation(), Condition::G2), (g3_violation(), Condition::G3)] {
        let only = Condition::ALL.iter().all(|&d| check_condition(&us, d).is_ok() == (d != c));
        ensure(only, || format!("the {c} fixture does not violate exactly {c}"))?;
        ensure(!duplicable(&us), || format!("the {c} fixture is duplicable"))?;
    }
    let fixtures = [g1_violation(), g2_violation(), g3_violation()];
    for us in spaces.iter().chain(&fixtures) {
        for which in [Sufficient::FineEnough, Sufficient::AssociativeJoin] {
            ensure(check_sufficient(us, which).implication_holds(), || format!("{which:?} implication fails on {us:?}"))?;
        }
    }
    Ok(format!("{} of {} spaces satisfy G1-G3, all duplicable", satisfying.len(), spaces.len()))
}

/// Per-id model of a `DT` element over a fixed id set: a proper table
/// fixes every id (present with a record or absent, including ids outside
/// the set), a delta leaves unmentioned ids open.
#[derive(Clone, PartialEq, Eq, Debug)]
enum Slot {
    Open,
    Put(TaskRecord),
    Gone,
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct Model {
    proper: bool,
    slots: BTreeMap<TaskId, Slot>,
}

fn model(ids: &[TaskId], v: &DtState) -> Model {
    let slots = ids
        .iter()
        .map(|k| {
            let slot = match v {
                DtState::Proper(t) => t.get(k).map_or(Slot::Gone, |r| Slot::Put(r.clone())),
                DtState::Delta(d) if d.del().contains(k) => Slot::Gone,
                DtState::Delta(d) => d.add().get(k).map_or(Slot::Open, |r| Slot::Put(r.clone())),
            };
            (k.clone(), slot)
        })
        .collect();
    Model { proper: matches!(v, DtState::Proper(_)), slots }
}

fn model_le(a: &Model, b: &Model) -> bool {
    match (a.proper, b.proper) {
        (true, false) => false,
        (true, true) => a == b,
        _ => a.slots.iter().all(|(k, x)| *x == Slot::Open || *x == b.slots[k]),
    }
}

/// A delta with no deletions is identical for every table extending it.
fn model_identical(a: &Model, x: &Model) -> bool {
    if !a.proper && x.proper {
        model_le(a, x) && a.slots.values().all(|s| *s != Slot::Gone)
    } else {
        model_le(a, x)
    }
}

fn dt_desk_scale() -> Outcome {
    let (ids, rs) = (desk_ids(), desk_records());
    let dt = bounded_dt(&ids, &rs);
    let elems = dt.elements();
    let models: Vec<Model> = elems.iter().map(|e| model(&ids, e)).collect();
    let n = elems.len();
    for i in 0..n {
        for j in 0..n {
            ensure(dt.le(&elems[i], &elems[j]) == model_le(&models[i], &models[j]), || {
                format!("order disagrees with the model at {:?}, {:?}", elems[i], elems[j])
            })?;
        }
    }
    let join = |i: usize, j: usize| -> Option<usize> {
        let ub: Vec<usize> = (0..n).filter(|&k| model_le(&models[i], &models[k]) && model_le(&models[j], &models[k])).collect();
        ub.iter().copied().find(|&k| ub.iter().all(|&m| model_le(&models[k], &models[m])))
    };
    let mut defined = 0;
    for i in 0..n {
        for j in 0..n {
            if let Some(m) = dt.merge(&elems[i], &elems[j]) {
                defined += 1;
                let want = join(i, j).ok_or_else(|| format!("merge defined without a join at {:?}, {:?}", elems[i], elems[j]))?;
                ensure(m == elems[want], || format!("merge is not the join at {:?}, {:?}", elems[i], elems[j]))?;
            }
        }
    }
    for x in &models {
        let ix: Vec<usize> = (0..n).filter(|&k| model_identical(&models[k], x)).collect();
        for &a in &ix {
            for &b in &ix {
                let m = dt.merge(&elems[a], &elems[b]).ok_or_else(|| format!("merge undefined on I_x at {a}, {b}"))?;
                ensure(model_identical(&model(&ids, &m), x), || format!("merge leaves I_x at {:?}, {:?}", elems[a], elems[b]))?;
            }
        }
    }
    Ok(format!("{n} elements, {defined} defined merges"))
}

fn pslens(dir: &Path) -> Result<(Vec<u8>, String, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_pslens"))
        .args(["--today", "--04-01", "--script"])
        .arg(dir.join("scenario.pslens"))
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("script failed: {}", String::from_utf8_lossy(&out.stderr)))?;
    let read = |f: &str| std::fs::read_to_string(dir.join(f)).map_err(|e| format!("{f}: {e}"));
    Ok((out.stdout, read("after_og.toml")?, read("after_both.toml")?))
}

fn copy_scenario() -> Result<tempfile::TempDir, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for entry in std::fs::read_dir(scenario_dir()).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
        if !name.starts_with("after_") {
            std::fs::copy(&path, dir.path().join(name)).map_err(|e| e.to_string())?;
        }
    }
    Ok(dir)
}

fn cli_determinism() -> Outcome {
    let (a, b) = (copy_scenario()?, copy_scenario()?);
    let first = pslens(a.path())?;
    let second = pslens(b.path())?;
    ensure(first == second, || "two replays differ".into())?;
    same_bytes("after_og.toml", &first.1, "s_tl_1.toml")?;
    same_bytes("after_both.toml", &first.2, "s_tl_2.toml")?;

    let mut s = Session::new(Variant::Plain, apr1(), golden_tasks("s_tl.toml"));
    s.execute("edit og add 004 \"Buy egg\" Apr 1").map_err(|e| e.to_string())?;
    s.execute("edit dt add 004 \"Buy eggs\" Apr 1").map_err(|e| e.to_string())?;
    let before = s.save_text();
    ensure(s.execute("put").is_err(), || "conflicting put succeeded".into())?;
    ensure(s.save_text() == before, || "failed put changed the session".into())?;
    ensure(before == golden("s_tl.toml"), || "save before put differs from s_tl.toml".into())?;
    Ok(String::from("replays identical, failed put left the source unchanged"))
}

fn main() -> ExitCode {
    let (wb, lemmas) = closure();
    let results: [(&str, Outcome); 8] = [
        ("plain scenario reproduces the golden files", scenario_exactness()),
        ("elaborated completion reaches the golden source", elaborated_scenario()),
        ("counterexample fixtures fail exactly as documented", counterexamples()),
        ("closure lenses are well-behaved", wb),
        ("derived lemmas hold on every closure lens", lemmas),
        ("update-space recipe", recipe()),
        ("DT merge is the join at desk scale", dt_desk_scale()),
        ("scenario script is deterministic", cli_determinism()),
    ];
    let mut ok = true;
    for (i, (what, r)) in results.iter().enumerate() {
        match r {
            Ok(note) => println!("criterion {}: pass ({what}; {note})", i + 1),
            Err(why) => {
                ok = false;
                println!("criterion {}: FAIL ({what}): {why}", i + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
