use pslens_core::iposet::{verify_iposet, FiniteIPoset, IPoset};
use pslens_core::laws::fixtures::{bool_omega, naturals, unit_omega};
use pslens_core::recipe::fixtures::{dt_toy, g1_violation, g2_violation, g3_violation};
use pslens_core::recipe::UpdateSpace;
use pslens_core::tasks::{Date, TaskId, TaskRecord, Tasks};
use pslens_sync::format::{parse_document, write_edit, write_tasks, Document, EditLists};
use pslens_sync::poset_format::{parse_structure, Structure};
use proptest::prelude::*;
use std::path::Path;

fn fixture(name: &str) -> Structure {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    parse_structure(&std::fs::read_to_string(&path).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn same_iposet(a: &FiniteIPoset, b: &FiniteIPoset) -> bool {
    a.labels() == b.labels()
        && a.le_pairs().eq(b.le_pairs())
        && a.identical_pairs().eq(b.identical_pairs())
        && a.has_merge() == b.has_merge()
        && a.merge_triples().eq(b.merge_triples())
}

#[test]
fn shipped_iposets_match_the_built_in_fixtures() {
    for (name, want) in [("bool_omega.toml", bool_omega()), ("unit_omega.toml", unit_omega()), ("naturals5.toml", naturals(5))] {
        let Structure::IPoset(got) = fixture(name) else { panic!("{name} is not an i-poset") };
        assert!(same_iposet(&got, &want), "{name}");
        assert!(verify_iposet(&got).is_ok());
    }
}

#[test]
fn shipped_spaces_match_the_built_in_fixtures() {
    let cases: [(&str, UpdateSpace); 4] = [
        ("dt_toy.toml", dt_toy()),
        ("g1_violation.toml", g1_violation()),
        ("g2_violation.toml", g2_violation()),
        ("g3_violation.toml", g3_violation()),
    ];
    for (name, want) in cases {
        let Structure::Space(got) = fixture(name) else { panic!("{name} is not an update space") };
        assert_eq!(got, want, "{name}");
    }
}

fn record() -> impl Strategy<Value = TaskRecord> {
    (any::<bool>(), "[A-Za-z0-9 \"'\\\\#=.-]{1,12}", 1u8..=12, 1u8..=28)
        .prop_filter("names are not blank", |(_, n, _, _)| !n.trim().is_empty())
        .prop_map(|(done, name, m, d)| TaskRecord::new(done, name, Date::new(m, d).unwrap()))
}

fn tasks() -> impl Strategy<Value = Tasks> {
    prop::collection::btree_map("[a-z0-9]{1,4}", record(), 0..6)
        .prop_map(|m| Tasks::from_records(m.into_iter().map(|(k, r)| (TaskId::from(k.as_str()), r))).unwrap())
}

fn edit() -> impl Strategy<Value = EditLists> {
    (tasks(), tasks(), tasks(), prop::collection::btree_set("[a-z0-9]{1,4}", 0..4)).prop_map(|(u, c, p, d)| {
        let mut e = EditLists::default();
        e.extend(&EditLists { upsert: u, ..EditLists::default() });
        e.extend(&EditLists { complete: c, ..EditLists::default() });
        e.extend(&EditLists { postpone: p, ..EditLists::default() });
        e.extend(&EditLists { delete: d.iter().map(|k| TaskId::from(k.as_str())).collect(), ..EditLists::default() });
        e
    })
}

proptest! {
    #[test]
    fn tables_round_trip(t in tasks()) {
        let text = write_tasks(&t);
        prop_assert_eq!(parse_document(&text).unwrap(), Document::Tasks(t.clone()));
        prop_assert_eq!(write_tasks(&t), text);
    }

    #[test]
    fn edits_round_trip(e in edit()) {
        prop_assert_eq!(parse_document(&write_edit(&e)).unwrap(), Document::Edit(e));
    }
}

#[test]
fn join_shorthand_leaves_unbounded_pairs_undefined() {
    let text = "kind = \"iposet\"\nelements = [\"a\", \"b\"]\nmerge = \"join\"\n";
    let Structure::IPoset(p) = parse_structure(text).unwrap() else { panic!("not an i-poset") };
    let (a, b) = (p.at("a"), p.at("b"));
    assert_eq!(p.merge(&a, &b), None);
    assert_eq!(p.merge(&a, &a), Some(a));
}
