//! The running to-do example: a three-task list viewed as ongoing tasks and
//! as tasks due today (Apr 1), updated from both views.

use super::dt::Delta;
use super::model::{Date, TaskId, TaskRecord, Tasks};
use super::split::{SplitDelta, ViewPredicate};
use alloc::collections::BTreeSet;

fn date(day: u8) -> Date {
    Date::new(4, day).expect("April dates are valid")
}

fn rec(done: bool, name: &str, due_day: u8) -> TaskRecord {
    TaskRecord::new(done, name, date(due_day))
}

fn table(rows: &[(&str, bool, &str, u8)]) -> Tasks {
    Tasks::from_records(rows.iter().map(|&(k, done, name, due)| (TaskId::from(k), rec(done, name, due))))
        .expect("scenario tables are well-formed")
}

fn ids(ks: &[&str]) -> BTreeSet<TaskId> {
    ks.iter().map(|&k| TaskId::from(k)).collect()
}

/// Apr 1.
pub fn today() -> Date {
    date(1)
}

pub fn s_tl() -> Tasks {
    table(&[("001", false, "Buy milk", 2), ("002", true, "Walk dog", 1), ("003", false, "Jog", 1)])
}

pub fn v_og() -> Tasks {
    table(&[("001", false, "Buy milk", 2), ("003", false, "Jog", 1)])
}

pub fn v_dt() -> Tasks {
    table(&[("002", true, "Walk dog", 1), ("003", false, "Jog", 1)])
}

/// Adds task 004 "Buy egg" through the ongoing view.
pub fn w_og() -> Delta {
    Delta::new(table(&[("004", false, "Buy egg", 1)]), BTreeSet::new()).expect("valid")
}

/// Deletes 002 and renames 003 to "Stretch" through the today view.
pub fn w_dt() -> Delta {
    Delta::new(table(&[("003", false, "Stretch", 1)]), ids(&["002"])).expect("valid")
}

pub fn w_merged() -> Delta {
    Delta::new(table(&[("003", false, "Stretch", 1), ("004", false, "Buy egg", 1)]), ids(&["002"])).expect("valid")
}

pub fn s_tl_1() -> Tasks {
    table(&[
        ("001", false, "Buy milk", 2),
        ("002", true, "Walk dog", 1),
        ("003", false, "Jog", 1),
        ("004", false, "Buy egg", 1),
    ])
}

pub fn v_og_1() -> Tasks {
    table(&[("001", false, "Buy milk", 2), ("003", false, "Jog", 1), ("004", false, "Buy egg", 1)])
}

pub fn v_dt_1() -> Tasks {
    table(&[("002", true, "Walk dog", 1), ("003", false, "Jog", 1), ("004", false, "Buy egg", 1)])
}

pub fn s_tl_2() -> Tasks {
    table(&[("001", false, "Buy milk", 2), ("003", false, "Stretch", 1), ("004", false, "Buy egg", 1)])
}

pub fn v_og_2() -> Tasks {
    s_tl_2()
}

pub fn v_dt_2() -> Tasks {
    table(&[("003", false, "Stretch", 1), ("004", false, "Buy egg", 1)])
}

/// Deletes 001 and completes 003 through the ongoing view.
pub fn w_complete() -> SplitDelta {
    SplitDelta::new(ViewPredicate::Ongoing, Tasks::new(), table(&[("003", true, "Jog", 1)]), ids(&["001"]))
        .expect("valid")
}

/// The source after [`w_complete`].
pub fn s_completed() -> Tasks {
    table(&[("002", true, "Walk dog", 1), ("003", true, "Jog", 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iposet::IPoset;
    use crate::tasks::dt::{apply_dt, DtDomain, DtState};

    #[test]
    fn merged_delta_is_the_join_of_the_two_view_deltas() {
        let m = DtDomain.merge(&DtState::Delta(w_og()), &DtState::Delta(w_dt()));
        assert_eq!(m, Some(DtState::Delta(w_merged())));
    }

    #[test]
    fn applying_the_deltas() {
        assert_eq!(apply_dt(&DtState::Delta(w_og()), &s_tl()), s_tl_1());
        assert_eq!(apply_dt(&DtState::Delta(w_merged()), &s_tl()), s_tl_2());
    }
}
