use pslens_core::iposet::{check_duplicable, verify_iposet, Bounded, Enumerable, IPoset};
use pslens_core::laws::{check_laws, check_u_acceptability, check_u_consistency, LawId, Universe};
use pslens_core::lens::{FailureReason, Lens, Stage};
use pslens_core::tasks::scenario::*;
use pslens_core::tasks::{
    all_deltas, all_split_states, all_tables, apply_dt, bounded_dt, elaborated_pipeline, init_tasks, plain_pipeline, Date,
    Delta, DtDomain, DtState, ElaboratedFilter, PlainFilter, SplitDelta, SplitDomain, SplitState, TaskId, TaskRecord,
    Tasks, ViewPredicate,
};
use proptest::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

fn apr(day: u8) -> Date {
    Date::new(4, day).unwrap()
}

fn ids2() -> Vec<TaskId> {
    vec![TaskId::from("k1"), TaskId::from("k2")]
}

/// Two records, one visible in both views and one hidden from both.
fn records2() -> Vec<TaskRecord> {
    vec![TaskRecord::new(false, "a", apr(1)), TaskRecord::new(true, "b", apr(2))]
}

/// One record per combination of done and due-today.
fn records4() -> Vec<TaskRecord> {
    vec![
        TaskRecord::new(false, "a", apr(1)),
        TaskRecord::new(true, "b", apr(2)),
        TaskRecord::new(false, "c", apr(2)),
        TaskRecord::new(true, "d", apr(1)),
    ]
}

fn delta(add: Tasks, del: &[&str]) -> Delta {
    Delta::new(add, del.iter().map(|&k| TaskId::from(k)).collect()).unwrap()
}

fn one(k: &str, r: TaskRecord) -> Tasks {
    [(TaskId::from(k), r)].into_iter().collect()
}

#[test]
fn plain_pipeline_reproduces_the_scenario() {
    let l = plain_pipeline(today());
    let proper = DtState::Proper;
    assert_eq!(l.get(&s_tl()), (proper(v_og()), proper(v_dt())));

    let w = (DtState::Delta(w_og()), DtState::omega());
    let s1 = l.put(&s_tl(), &w).unwrap();
    assert_eq!(s1, s_tl_1());
    let views = l.get(&s1);
    assert_eq!(views, (proper(v_og_1()), proper(v_dt_1())));
    assert!(l.view().le(&w, &views));

    let w = (DtState::Delta(w_og()), DtState::Delta(w_dt()));
    let s2 = l.put(&s_tl(), &w).unwrap();
    assert_eq!(s2, s_tl_2());
    let views = l.get(&s2);
    assert_eq!(views, (proper(v_og_2()), proper(v_dt_2())));
    assert!(DtDomain.le(&w.0, &views.0) && DtDomain.le(&w.1, &views.1));
}

#[test]
fn initiator_examples() {
    let init = init_tasks();
    assert_eq!(init.put(&s_tl(), &DtState::Delta(w_og())), Ok(s_tl_1()));
    assert_eq!(init.put(&s_tl(), &DtState::Delta(w_merged())), Ok(s_tl_2()));
    assert_eq!(init.put(&s_tl(), &DtState::omega()), Ok(s_tl()));
    assert_eq!(init.put(&s_tl(), &DtState::Proper(v_og())), Ok(v_og()));
}

#[test]
fn elaborated_pipeline_completes_and_deletes() {
    let l = elaborated_pipeline(today());
    let w = (SplitState::Delta(w_complete()), SplitState::omega());
    let s = l.put(&s_tl(), &w).unwrap();
    assert_eq!(s, s_completed());
    let views = l.get(&s);
    assert!(l.view().le(&w, &views));
    // The elaborated filter hands the completion over as an upsert.
    let f = ElaboratedFilter::new(ViewPredicate::Ongoing);
    let back = f.put(&DtState::Proper(s_tl()), &w.0).unwrap();
    assert_eq!(back, DtState::Delta(delta(one("003", TaskRecord::new(true, "Jog", apr(1))), &["001"])));
}

#[test]
fn elaborated_pipeline_postpones() {
    let l = elaborated_pipeline(today());
    let moved = TaskRecord::new(false, "Jog", apr(3));
    let po = SplitDelta::new(ViewPredicate::DueOn(today()), Tasks::new(), one("003", moved.clone()), BTreeSet::new()).unwrap();
    let s = l.put(&s_tl(), &(SplitState::omega(), SplitState::Delta(po))).unwrap();
    assert_eq!(s.get(&TaskId::from("003")), Some(&moved));
    let (_, dt) = l.get(&s);
    assert_eq!(dt, SplitState::Proper(one("002", TaskRecord::new(true, "Walk dog", apr(1)))));
}

#[test]
fn elaborated_get_splits_additions() {
    let f = ElaboratedFilter::new(ViewPredicate::Ongoing);
    let done = TaskRecord::new(true, "Jog", apr(1));
    let open = TaskRecord::new(false, "Run", apr(1));
    let d = delta(one("003", done.clone()).upsert(&one("005", open.clone())), &["001"]);
    let expected = SplitDelta::new(ViewPredicate::Ongoing, one("005", open), one("003", done), d.del().clone()).unwrap();
    assert_eq!(f.get(&DtState::Delta(d.clone())), SplitState::Delta(expected.clone()));
    assert_eq!(f.put(&DtState::omega(), &SplitState::Delta(expected)), Ok(DtState::Delta(d)));
    // Proper sources follow the plain rule.
    assert_eq!(f.get(&DtState::Proper(s_tl())), SplitState::Proper(v_og()));
}

#[test]
fn conflicting_view_deltas_fail_in_dup() {
    let l = plain_pipeline(today());
    let add = DtState::Delta(delta(one("009", TaskRecord::new(false, "x", apr(1))), &[]));
    let del = DtState::Delta(delta(Tasks::new(), &["009"]));
    let err = l.put(&s_tl(), &(add, del)).unwrap_err();
    assert_eq!(err.reason, FailureReason::MergeConflict);
    assert_eq!(err.stage, vec![Stage::First, Stage::Second]);
}

#[test]
fn filters_reject_updates_they_cannot_show() {
    let l = plain_pipeline(today());
    let done = DtState::Delta(delta(one("009", TaskRecord::new(true, "x", apr(1))), &[]));
    let err = l.put(&s_tl(), &(done, DtState::omega())).unwrap_err();
    assert_eq!(err.reason, FailureReason::GuardFailed);
    assert_eq!(err.stage, vec![Stage::Second, Stage::Left]);
}

/// Plain proper put upserts into the filtered-out tasks, so a view task
/// that reuses the id of a hidden completed task replaces it.
#[test]
fn plain_proper_put_overwrites_a_hidden_task_with_the_same_id() {
    let f = PlainFilter::new(ViewPredicate::Ongoing);
    let reused = TaskRecord::new(false, "New walk", apr(5));
    let view = v_og().upsert(&one("002", reused.clone()));
    let DtState::Proper(t) = f.put(&DtState::Proper(s_tl()), &DtState::Proper(view)).unwrap() else { panic!() };
    assert_eq!(t.get(&TaskId::from("002")), Some(&reused));
    assert_eq!(t.len(), 3);
}

// An independent model of DT: tables as sets of (id, record) entries.

type Entries = BTreeSet<(String, TaskRecord)>;

#[derive(Clone, Debug)]
enum Model {
    Proper(Entries),
    Delta(Entries, BTreeSet<String>),
}

fn entries(t: &Tasks) -> Entries {
    t.iter().map(|(k, r)| (k.as_str().to_string(), r.clone())).collect()
}

fn keys(e: &Entries) -> BTreeSet<String> {
    e.iter().map(|(k, _)| k.clone()).collect()
}

fn model(x: &DtState) -> Model {
    match x {
        DtState::Proper(t) => Model::Proper(entries(t)),
        DtState::Delta(d) => Model::Delta(entries(d.add()), d.del().iter().map(|k| k.as_str().to_string()).collect()),
    }
}

fn model_le(a: &Model, b: &Model) -> bool {
    match (a, b) {
        (Model::Proper(t), Model::Proper(u)) => t == u,
        (Model::Delta(a, d), Model::Delta(a2, d2)) => a.is_subset(a2) && d.is_subset(d2),
        (Model::Delta(a, d), Model::Proper(t)) => a.is_subset(t) && keys(t).is_disjoint(d),
        (Model::Proper(_), Model::Delta(..)) => false,
    }
}

fn model_identical(a: &Model, b: &Model) -> bool {
    match (a, b) {
        (Model::Delta(a, d), Model::Proper(t)) => d.is_empty() && a.is_subset(t),
        _ => model_le(a, b),
    }
}

fn brute_join(xs: &[DtState], a: &DtState, b: &DtState) -> Option<DtState> {
    let (ma, mb) = (model(a), model(b));
    let ms: Vec<Model> = xs.iter().map(model).collect();
    let upper: Vec<usize> = (0..xs.len()).filter(|&i| model_le(&ma, &ms[i]) && model_le(&mb, &ms[i])).collect();
    upper.iter().find(|&&i| upper.iter().all(|&j| model_le(&ms[i], &ms[j]))).map(|&i| xs[i].clone())
}

#[test]
fn dt_merge_is_the_join_and_total_on_identities() {
    let p = bounded_dt(&ids2(), &records2());
    let xs = p.elements();
    assert_eq!(xs.len(), 9 + 16);
    let mut defined = 0;
    for a in &xs {
        for b in &xs {
            // The model agrees with the domain's own relations.
            assert_eq!(DtDomain.le(a, b), model_le(&model(a), &model(b)));
            assert_eq!(DtDomain.identical(a, b), model_identical(&model(a), &model(b)));
            if let Some(m) = DtDomain.merge(a, b) {
                defined += 1;
                assert_eq!(Some(m), brute_join(&xs, a, b), "{a:?} ⊕ {b:?}");
            }
        }
    }
    assert!(defined > 100);
    for z in &xs {
        let ids: Vec<&DtState> = xs.iter().filter(|x| model_identical(&model(x), &model(z))).collect();
        for a in &ids {
            for b in &ids {
                let m = DtDomain.merge(a, b).unwrap_or_else(|| panic!("{a:?} ⊕ {b:?} undefined in I_{z:?}"));
                assert!(model_identical(&model(&m), &model(z)));
            }
        }
    }
    assert!(verify_iposet(&p).is_ok());
    assert!(check_duplicable(&p).unwrap().is_ok());
}

#[test]
fn omega_is_least_and_identical_everywhere() {
    let p = bounded_dt(&ids2(), &records4());
    for x in p.elements() {
        assert!(DtDomain.le(&DtState::omega(), &x));
        assert!(DtDomain.identical(&DtState::omega(), &x));
        assert_eq!(DtDomain.merge(&DtState::omega(), &x), Some(x));
    }
    let og = SplitDomain::ongoing();
    for x in all_split_states(&og, &ids2(), &records4()) {
        assert!(og.le(&SplitState::omega(), &x) && og.identical(&SplitState::omega(), &x));
    }
}

#[test]
fn elaborated_view_domains_are_iposets() {
    for dom in [SplitDomain::ongoing(), SplitDomain::due_on(apr(1))] {
        let xs = all_split_states(&dom, &ids2(), &records4());
        assert!(xs.iter().all(|x| dom.contains(x)));
        let b = Bounded::new(dom, xs);
        assert!(verify_iposet(&b).is_ok(), "{}", verify_iposet(&b));
        if dom.has_merge() {
            assert!(check_duplicable(&b).unwrap().is_ok());
        }
    }
}

#[test]
fn init_tasks_satisfies_the_update_laws() {
    let (ids, rs) = (ids2(), records4());
    let init = init_tasks();
    let states = all_tables(&ids, &rs);
    let mut views: Vec<DtState> = states.iter().cloned().map(DtState::Proper).collect();
    views.extend(all_deltas(&ids, &rs).into_iter().map(DtState::Delta));
    assert_eq!(check_u_acceptability(&init, &states, &views), Ok(()));
    assert_eq!(check_u_consistency(&init, &states, &views), Ok(()));
    let u = Universe::sampled(states, views);
    for r in check_laws(&init, &[LawId::Wb], &u).unwrap() {
        assert!(r.holds(), "{}", r.render(&init));
    }
}

fn dt_sample(ids: &[TaskId], rs: &[TaskRecord]) -> Vec<DtState> {
    bounded_dt(ids, rs).elements()
}

#[test]
fn plain_filters_are_well_behaved_on_bounded_samples() {
    let xs = dt_sample(&ids2(), &records4());
    for pred in [ViewPredicate::Ongoing, ViewPredicate::DueOn(apr(1))] {
        let f = PlainFilter::new(pred);
        let u = Universe::sampled(xs.clone(), xs.clone());
        for r in check_laws(&f, &[LawId::Wb, LawId::GetMonotone, LawId::PutDeterminesGet], &u).unwrap() {
            assert!(r.holds(), "{pred}: {}", r.render(&f));
        }
    }
}

#[test]
fn elaborated_filters_are_well_behaved_on_bounded_samples() {
    let xs = dt_sample(&ids2(), &records4());
    for pred in [ViewPredicate::Ongoing, ViewPredicate::DueOn(apr(1))] {
        let f = ElaboratedFilter::new(pred);
        let views = all_split_states(f.view(), &ids2(), &records4());
        let u = Universe::sampled(xs.clone(), views);
        for r in check_laws(&f, &[LawId::Wb, LawId::GetMonotone, LawId::PutDeterminesGet], &u).unwrap() {
            assert!(r.holds(), "{pred}: {}", r.render(&f));
        }
    }
}

/// A completion and a deletion of the same task are different requests with
/// the same proper upper bounds in the ongoing view.
#[test]
fn completion_and_deletion_differ_only_as_intentions() {
    let dom = SplitDomain::ongoing();
    let xs = all_split_states(&dom, &ids2(), &records4());
    let propers: Vec<&SplitState> = xs.iter().filter(|x| matches!(x, SplitState::Proper(_))).collect();
    let k = TaskId::from("k1");
    let mut pairs = 0;
    for r in records4().into_iter().filter(|r| r.done) {
        let complete = SplitState::Delta(
            SplitDelta::new(ViewPredicate::Ongoing, Tasks::new(), one("k1", r), BTreeSet::new()).unwrap(),
        );
        let delete = SplitState::Delta(
            SplitDelta::new(ViewPredicate::Ongoing, Tasks::new(), Tasks::new(), [k.clone()].into()).unwrap(),
        );
        assert_ne!(complete, delete);
        let above = |w: &SplitState| propers.iter().filter(|t| dom.le(w, t)).cloned().cloned().collect::<Vec<_>>();
        assert_eq!(above(&complete), above(&delete));
        assert!(!above(&complete).is_empty());
        // The source sees the difference.
        let f = ElaboratedFilter::new(ViewPredicate::Ongoing);
        assert_ne!(f.put(&DtState::omega(), &complete), f.put(&DtState::omega(), &delete));
        pairs += 1;
    }
    assert_eq!(pairs, 2);
}

/// Update preservation through the whole pipeline: whenever `put` succeeds,
/// each view delta is below the corresponding refreshed view.
#[test]
fn pipeline_preserves_updates_on_bounded_samples() {
    let (ids, rs) = (ids2(), records4());
    let l = plain_pipeline(apr(1));
    let sources = all_tables(&ids, &rs);
    let deltas: Vec<DtState> = all_deltas(&ids, &rs).into_iter().map(DtState::Delta).collect();
    let mut defined = 0;
    for s in &sources {
        for a in &deltas {
            for b in &deltas {
                let v = (a.clone(), b.clone());
                if let Ok(s2) = l.put(s, &v) {
                    defined += 1;
                    assert!(l.view().le(&v, &l.get(&s2)), "{s:?} {v:?}");
                }
            }
        }
    }
    assert!(defined > 1000);

    let e = elaborated_pipeline(apr(1));
    let og = all_split_states(&SplitDomain::ongoing(), &ids, &rs);
    let dt = all_split_states(&SplitDomain::due_on(apr(1)), &ids, &rs);
    for s in &sources {
        for a in og.iter().filter(|x| matches!(x, SplitState::Delta(_))) {
            for b in dt.iter().filter(|x| matches!(x, SplitState::Delta(_))) {
                let v = (a.clone(), b.clone());
                if let Ok(s2) = e.put(s, &v) {
                    assert!(e.view().le(&v, &e.get(&s2)), "{s:?} {v:?}");
                }
            }
        }
    }
}

#[test]
fn pipeline_weak_laws_on_a_small_sample() {
    let ids = vec![TaskId::from("k1")];
    let rs = records4();
    let l = plain_pipeline(apr(1));
    let dts = dt_sample(&ids, &rs);
    let views: Vec<(DtState, DtState)> =
        dts.iter().flat_map(|a| dts.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let u = Universe::sampled(all_tables(&ids, &rs), views);
    for r in check_laws(&l, &[LawId::Wb, LawId::GetMonotone, LawId::ViewStability], &u).unwrap() {
        assert!(r.holds(), "{}", r.render(&l));
    }
}

fn apply_oracle(add: &BTreeMap<String, TaskRecord>, del: &BTreeSet<String>, t: &BTreeMap<String, TaskRecord>) -> BTreeMap<String, TaskRecord> {
    let mut out: BTreeMap<String, TaskRecord> = t.iter().filter(|(k, _)| !del.contains(*k)).map(|(k, v)| (k.clone(), v.clone())).collect();
    for (k, v) in add {
        out.insert(k.clone(), v.clone());
    }
    out
}

fn arb_record() -> impl Strategy<Value = TaskRecord> {
    (any::<bool>(), "[a-z]{1,3}", 1u8..=3).prop_map(|(done, name, day)| TaskRecord::new(done, name, apr(day)))
}

fn arb_table() -> impl Strategy<Value = BTreeMap<String, TaskRecord>> {
    prop::collection::btree_map("[0-9]", arb_record(), 0..5)
}

fn to_tasks(m: &BTreeMap<String, TaskRecord>) -> Tasks {
    m.iter().map(|(k, r)| (TaskId::from(k.as_str()), r.clone())).collect()
}

proptest! {
    #[test]
    fn apply_matches_the_map_semantics(t in arb_table(), add in arb_table(), del in prop::collection::btree_set("[0-9]", 0..4)) {
        let del: BTreeSet<String> = del.into_iter().filter(|k| !add.contains_key(k)).collect();
        let d = Delta::new(to_tasks(&add), del.iter().map(|k| TaskId::from(k.as_str())).collect()).unwrap();
        let got = apply_dt(&DtState::Delta(d.clone()), &to_tasks(&t));
        prop_assert_eq!(got.clone(), to_tasks(&apply_oracle(&add, &del, &t)));
        prop_assert!(DtDomain.le(&DtState::Delta(d), &DtState::Proper(got)));
    }

    #[test]
    fn pipeline_preserves_random_updates(
        t in arb_table(),
        a1 in arb_table(), d1 in prop::collection::btree_set("[0-9]", 0..3),
        a2 in arb_table(), d2 in prop::collection::btree_set("[0-9]", 0..3),
    ) {
        let l = plain_pipeline(apr(1));
        let mk = |a: &BTreeMap<String, TaskRecord>, d: BTreeSet<String>| {
            let d: BTreeSet<TaskId> = d.into_iter().filter(|k| !a.contains_key(k)).map(|k| TaskId::from(k.as_str())).collect();
            DtState::Delta(Delta::new(to_tasks(a), d).unwrap())
        };
        let v = (mk(&a1, d1), mk(&a2, d2));
        let s = to_tasks(&t);
        if let Ok(s2) = l.put(&s, &v) {
            prop_assert!(l.view().le(&v, &l.get(&s2)));
        }
        let id = l.get(&s);
        prop_assert_eq!(l.put(&s, &id), Ok(s));
    }
}
