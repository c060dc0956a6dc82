//! Named law suites for the `laws` command and the `--laws` flag.
//!
//! Each suite prints structured text and reports whether every verdict was
//! the expected one: lawful lenses must pass, and the counterexample
//! fixtures must fail exactly the laws they are designed to fail.

use pslens_core::iposet::{check_duplicable, verify_iposet, Bounded};
use pslens_core::laws::closure::{check_domain, closure_domains, ClosureDomain, ClosureOutcome};
use pslens_core::laws::fixtures::{fixture_lenses, Fixture};
use pslens_core::laws::{check_laws, check_u_acceptability, check_u_consistency, LawId, Universe, Verdict};
use pslens_core::lens::Lens;
use pslens_core::recipe::fixtures::{enumerate_spaces, g1_violation, g2_violation, g3_violation};
use pslens_core::recipe::{check_condition, check_sufficient, gen_iposet, Condition, Sufficient, UpdateSpace};
use pslens_core::tasks::{
    all_split_states, all_tables, bounded_dt, init_tasks, Date, DtState, ElaboratedFilter, PlainFilter, SplitDomain,
    TaskId, TaskRecord, ViewPredicate,
};
use rayon::prelude::*;
use std::fmt::Write;

/// The suite names accepted besides individual fixture names.
pub const SUITES: [&str; 5] = ["all", "fixtures", "closure", "recipe", "tasks"];

/// Largest carrier of the closure suite, and the largest size for which
/// every identical-update relation is tried.
pub const CLOSURE_MAX: usize = 5;
pub const CLOSURE_ALL_IDENTITIES: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub text: String,
    /// Every verdict matched its expectation.
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite or fixture `{0}`; suites: all, fixtures, closure, recipe, tasks")]
pub struct UnknownSuite(pub String);

pub fn run_suite(name: &str) -> Result<SuiteReport, UnknownSuite> {
    match name {
        "all" => {
            let parts = [fixtures_suite(None), closure_suite(), recipe_suite(), tasks_suite()];
            let ok = parts.iter().all(|p| p.ok);
            let text = parts.into_iter().map(|p| p.text).collect::<Vec<_>>().join("\n");
            Ok(SuiteReport { text, ok })
        }
        "fixtures" => Ok(fixtures_suite(None)),
        "closure" => Ok(closure_suite()),
        "recipe" => Ok(recipe_suite()),
        "tasks" => Ok(tasks_suite()),
        other if fixture_lenses().iter().any(|f| f.name == other) => Ok(fixtures_suite(Some(other))),
        other => Err(UnknownSuite(other.into())),
    }
}

fn finish(mut text: String, ok: bool) -> SuiteReport {
    let _ = writeln!(text, "result: {}", if ok { "pass" } else { "FAIL" });
    SuiteReport { text, ok }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "expected"
    } else {
        "UNEXPECTED"
    }
}

fn indent(text: &str, by: &str) -> String {
    text.lines().map(|l| format!("{by}{l}\n")).collect()
}

fn fixtures_suite(only: Option<&str>) -> SuiteReport {
    let mut text = String::from("suite fixtures\n");
    let mut ok = true;
    for f in fixture_lenses().iter().filter(|f| only.is_none_or(|n| n == f.name)) {
        ok &= check_fixture(f, &mut text);
    }
    finish(text, ok)
}

fn check_fixture(f: &Fixture, text: &mut String) -> bool {
    let u = Universe::exhaustive(&f.lens);
    let laws: Vec<LawId> = f.expected.iter().map(|(l, _)| *l).collect();
    let reports = check_laws(&f.lens, &laws, &u).expect("exhaustive universes lie inside the domains");
    let _ = writeln!(text, "  {}", f.name);
    let mut ok = true;
    for (r, (_, want)) in reports.iter().zip(&f.expected) {
        let matched = r.verdict == *want;
        ok &= matched;
        let expected = match want {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
        };
        let rendered = r.render(&f.lens);
        let mut lines = rendered.lines();
        let _ = writeln!(text, "    {} [{}: expected {expected}]", lines.next().unwrap_or(""), mark(matched));
        for l in lines {
            let _ = writeln!(text, "    {l}");
        }
    }
    ok
}

/// The closure suite's domains.
pub fn closure_suite_domains() -> Vec<ClosureDomain> {
    closure_domains(CLOSURE_MAX, CLOSURE_ALL_IDENTITIES)
}

/// Checks the closure suite over `domains`, one domain per task.
pub fn closure_outcomes(domains: &[ClosureDomain]) -> Vec<ClosureOutcome> {
    domains.par_iter().flat_map_iter(check_domain).collect()
}

fn closure_suite() -> SuiteReport {
    let domains = closure_suite_domains();
    let outcomes = closure_outcomes(&domains);
    let mut text = String::from("suite closure\n");
    let _ = writeln!(
        text,
        "  {} domains of 1..={CLOSURE_MAX} elements ({} duplicable), {} lenses",
        domains.len(),
        domains.iter().filter(|d| d.duplicable).count(),
        outcomes.len()
    );
    let unlawful: Vec<&ClosureOutcome> = outcomes.iter().filter(|o| !o.law(LawId::Wb)).collect();
    let lemma: Vec<&ClosureOutcome> = outcomes.iter().filter(|o| !o.lemmas_hold()).collect();
    let _ = writeln!(text, "  wb: {} failures [{}]", unlawful.len(), mark(unlawful.is_empty()));
    let _ = writeln!(text, "  derived lemmas: {} failures [{}]", lemma.len(), mark(lemma.is_empty()));
    for o in unlawful.iter().chain(&lemma).take(10) {
        let _ = writeln!(text, "    {} over {}", o.lens, o.domain);
        if let Some(f) = &o.failure {
            text.push_str(&indent(f, "      "));
        }
    }
    finish(text, unlawful.is_empty() && lemma.is_empty())
}

fn all_g(us: &UpdateSpace) -> bool {
    Condition::ALL.iter().all(|&c| check_condition(us, c).is_ok())
}

fn duplicable(us: &UpdateSpace) -> bool {
    check_duplicable(&gen_iposet(us)).is_ok_and(|r| r.is_ok())
}

fn recipe_suite() -> SuiteReport {
    let mut text = String::from("suite recipe\n");
    let spaces = enumerate_spaces(2, 3);
    let satisfying: Vec<&UpdateSpace> = spaces.iter().filter(|us| all_g(us)).collect();
    let not_dup = satisfying.iter().filter(|us| !duplicable(us)).count();
    let mut ok = not_dup == 0;
    let _ = writeln!(
        text,
        "  {} spaces, {} satisfy G1-G3, {not_dup} of those not duplicable [{}]",
        spaces.len(),
        satisfying.len(),
        mark(not_dup == 0)
    );
    for (name, us, c) in [
        ("g1-violation", g1_violation(), Condition::G1),
        ("g2-violation", g2_violation(), Condition::G2),
        ("g3-violation", g3_violation(), Condition::G3),
    ] {
        let only = Condition::ALL.iter().all(|&d| check_condition(&us, d).is_ok() == (d != c));
        let fails = !duplicable(&us);
        ok &= only && fails;
        let _ = writeln!(text, "  {name}: violates only {c}: {only}, not duplicable: {fails} [{}]", mark(only && fails));
    }
    let mut broken = 0;
    for us in &spaces {
        for which in [Sufficient::FineEnough, Sufficient::AssociativeJoin] {
            broken += usize::from(!check_sufficient(us, which).implication_holds());
        }
    }
    ok &= broken == 0;
    let _ = writeln!(text, "  sufficient conditions: {broken} broken implications [{}]", mark(broken == 0));
    finish(text, ok)
}

fn apr(day: u8) -> Date {
    Date::new(4, day).expect("April dates are valid")
}

/// Two ids and four records covering both predicates in both directions.
pub fn desk_ids() -> Vec<TaskId> {
    vec![TaskId::from("k1"), TaskId::from("k2")]
}

pub fn desk_records() -> Vec<TaskRecord> {
    vec![
        TaskRecord::new(false, "a", apr(1)),
        TaskRecord::new(true, "b", apr(2)),
        TaskRecord::new(false, "c", apr(2)),
        TaskRecord::new(true, "d", apr(1)),
    ]
}

fn tasks_suite() -> SuiteReport {
    let mut text = String::from("suite tasks\n");
    let mut ok = true;
    let (ids, rs) = (desk_ids(), desk_records());
    let mut line = |what: &str, good: bool, text: &mut String| {
        ok &= good;
        let _ = writeln!(text, "  {what}: {} [{}]", if good { "holds" } else { "fails" }, mark(good));
    };

    let dt = bounded_dt(&ids, &rs);
    line("DT is an i-poset", verify_iposet(&dt).is_ok(), &mut text);
    line("DT is duplicable", check_duplicable(&dt).is_ok_and(|r| r.is_ok()), &mut text);
    let og = SplitDomain::ongoing();
    let og_b = Bounded::new(og, all_split_states(&og, &ids, &rs));
    line("DT_OG is duplicable", check_duplicable(&og_b).is_ok_and(|r| r.is_ok()), &mut text);
    let due = SplitDomain::due_on(apr(1));
    line("DT_DT is an i-poset", verify_iposet(&Bounded::new(due, all_split_states(&due, &ids, &rs))).is_ok(), &mut text);

    let init = init_tasks();
    let states = all_tables(&ids, &rs);
    let views: Vec<DtState> = pslens_core::iposet::Enumerable::elements(&dt);
    line("init_tasks u-acceptability", check_u_acceptability(&init, &states, &views).is_ok(), &mut text);
    line("init_tasks u-consistency", check_u_consistency(&init, &states, &views).is_ok(), &mut text);

    let laws = [LawId::Wb, LawId::GetMonotone, LawId::PutDeterminesGet];
    for pred in [ViewPredicate::Ongoing, ViewPredicate::DueOn(apr(1))] {
        let f = PlainFilter::new(pred);
        let u = Universe::sampled(views.clone(), views.clone());
        let good = check_laws(&f, &laws, &u).is_ok_and(|rs| rs.iter().all(|r| r.holds()));
        line(&format!("plain filter {pred}: wb, get-monotone, put-determines-get"), good, &mut text);
        let f = ElaboratedFilter::new(pred);
        let u = Universe::sampled(views.clone(), all_split_states(f.view(), &ids, &rs));
        let good = check_laws(&f, &laws, &u).is_ok_and(|rs| rs.iter().all(|r| r.holds()));
        line(&format!("elaborated filter {pred}: wb, get-monotone, put-determines-get"), good, &mut text);
    }
    finish(text, ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_names_select_one_fixture() {
        let r = run_suite("bad").unwrap();
        assert!(r.ok, "{}", r.text);
        assert!(r.text.contains("ps-stability: fails"));
        assert!(!r.text.contains("constUnit_ns"));
        assert!(run_suite("nope").is_err());
    }

    #[test]
    fn recipe_and_tasks_suites_pass() {
        for name in ["recipe", "tasks"] {
            let r = run_suite(name).unwrap();
            assert!(r.ok, "{}", r.text);
        }
    }
}
