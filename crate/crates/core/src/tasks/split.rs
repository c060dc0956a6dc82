//! The elaborated view domains `DT_OG` and `DT_DT`.
//!
//! A strictly partial element is a triple `(A, H, D)`: `A` adds tasks that
//! stay visible in the view, `H` adds tasks that leave it (completed for the
//! ongoing view, postponed for the today view), and `D` deletes. The three
//! id sets are pairwise disjoint.

use super::model::{show_ids, Date, TaskError, TaskId, TaskRecord, Tasks};
use crate::iposet::IPoset;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Which tasks a filter keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViewPredicate {
    /// `done = False`.
    Ongoing,
    /// `due = today`.
    DueOn(Date),
}

impl ViewPredicate {
    pub fn holds(self, r: &TaskRecord) -> bool {
        match self {
            ViewPredicate::Ongoing => !r.done,
            ViewPredicate::DueOn(d) => r.due == d,
        }
    }

    /// Every record of `t` satisfies the predicate.
    pub fn all(self, t: &Tasks) -> bool {
        t.iter().all(|(_, r)| self.holds(r))
    }

    /// Name of the hidden component: `C` (complete) or `Po` (postpone).
    pub fn hidden_name(self) -> &'static str {
        match self {
            ViewPredicate::Ongoing => "C",
            ViewPredicate::DueOn(_) => "Po",
        }
    }
}

impl fmt::Display for ViewPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViewPredicate::Ongoing => f.write_str("ongoing"),
            ViewPredicate::DueOn(d) => write!(f, "due {d}"),
        }
    }
}

/// `(A, H, D)`, validated against a predicate.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplitDelta {
    visible: Tasks,
    hidden: Tasks,
    del: BTreeSet<TaskId>,
}

impl SplitDelta {
    pub fn new(pred: ViewPredicate, visible: Tasks, hidden: Tasks, del: BTreeSet<TaskId>) -> Result<SplitDelta, TaskError> {
        if let Some((k, _)) = visible.iter().find(|(_, r)| !pred.holds(r)) {
            return Err(TaskError::WrongComponent { id: k.clone(), component: "A" });
        }
        if let Some((k, _)) = hidden.iter().find(|(_, r)| pred.holds(r)) {
            return Err(TaskError::WrongComponent { id: k.clone(), component: pred.hidden_name() });
        }
        let d = SplitDelta { visible, hidden, del };
        match d.overlap() {
            Some(k) => Err(TaskError::Overlap(k)),
            None => Ok(d),
        }
    }

    pub fn empty() -> SplitDelta {
        SplitDelta::default()
    }

    pub fn visible(&self) -> &Tasks {
        &self.visible
    }

    pub fn hidden(&self) -> &Tasks {
        &self.hidden
    }

    pub fn del(&self) -> &BTreeSet<TaskId> {
        &self.del
    }

    /// `dom(H) ∪ D`: the ids that must be absent from the view.
    pub fn absent(&self) -> BTreeSet<TaskId> {
        let mut ids = self.hidden.ids();
        ids.extend(self.del.iter().cloned());
        ids
    }

    fn overlap(&self) -> Option<TaskId> {
        let (a, h) = (self.visible.ids(), self.hidden.ids());
        a.intersection(&h).chain(a.intersection(&self.del)).chain(h.intersection(&self.del)).next().cloned()
    }

    fn is_valid(&self, pred: ViewPredicate) -> bool {
        pred.all(&self.visible) && self.hidden.iter().all(|(_, r)| !pred.holds(r)) && self.overlap().is_none()
    }

    fn le(&self, other: &SplitDelta) -> bool {
        self.visible.is_submap_of(&other.visible)
            && self.hidden.is_submap_of(&other.hidden)
            && self.del.is_subset(&other.del)
    }

    fn union(&self, other: &SplitDelta) -> Option<SplitDelta> {
        let d = SplitDelta {
            visible: self.visible.union(&other.visible)?,
            hidden: self.hidden.union(&other.hidden)?,
            del: self.del.union(&other.del).cloned().collect(),
        };
        d.overlap().is_none().then_some(d)
    }
}

impl fmt::Display for SplitDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.visible, self.hidden, show_ids(&self.del))
    }
}

/// An element of `DT_OG` or `DT_DT`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SplitState {
    Proper(Tasks),
    Delta(SplitDelta),
}

impl SplitState {
    /// `Ω = (∅, ∅, ∅)`.
    pub fn omega() -> SplitState {
        SplitState::Delta(SplitDelta::empty())
    }
}

/// `DT_OG` (with a merge) or `DT_DT` (without one).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitDomain {
    pred: ViewPredicate,
    with_merge: bool,
}

impl SplitDomain {
    /// `DT_OG`, duplicable with the component-wise union.
    pub fn ongoing() -> SplitDomain {
        SplitDomain { pred: ViewPredicate::Ongoing, with_merge: true }
    }

    /// `DT_DT` for the given day. It carries no merge since it is never
    /// placed under duplication.
    pub fn due_on(today: Date) -> SplitDomain {
        SplitDomain { pred: ViewPredicate::DueOn(today), with_merge: false }
    }

    pub fn for_predicate(pred: ViewPredicate) -> SplitDomain {
        match pred {
            ViewPredicate::Ongoing => SplitDomain::ongoing(),
            ViewPredicate::DueOn(d) => SplitDomain::due_on(d),
        }
    }

    pub fn predicate(&self) -> ViewPredicate {
        self.pred
    }
}

impl IPoset for SplitDomain {
    type Elem = SplitState;

    fn le(&self, a: &SplitState, b: &SplitState) -> bool {
        match (a, b) {
            (SplitState::Proper(t), SplitState::Proper(u)) => t == u,
            (SplitState::Delta(d), SplitState::Delta(e)) => d.le(e),
            (SplitState::Delta(d), SplitState::Proper(t)) => d.visible.is_submap_of(t) && t.disjoint_from(&d.absent()),
            (SplitState::Proper(_), SplitState::Delta(_)) => false,
        }
    }

    fn identical(&self, a: &SplitState, b: &SplitState) -> bool {
        match (a, b) {
            (SplitState::Delta(d), SplitState::Proper(t)) => {
                d.hidden.is_empty() && d.del.is_empty() && d.visible.is_submap_of(t)
            }
            _ => self.le(a, b),
        }
    }

    fn least(&self) -> Option<SplitState> {
        Some(SplitState::omega())
    }

    fn merge(&self, a: &SplitState, b: &SplitState) -> Option<SplitState> {
        if !self.with_merge {
            return None;
        }
        match (a, b) {
            (SplitState::Proper(t), SplitState::Proper(u)) => (t == u).then(|| a.clone()),
            (SplitState::Delta(_), SplitState::Proper(_)) => self.le(a, b).then(|| b.clone()),
            (SplitState::Proper(_), SplitState::Delta(_)) => self.le(b, a).then(|| a.clone()),
            (SplitState::Delta(d), SplitState::Delta(e)) => d.union(e).map(SplitState::Delta),
        }
    }

    fn has_merge(&self) -> bool {
        self.with_merge
    }

    fn contains(&self, a: &SplitState) -> bool {
        match a {
            SplitState::Proper(t) => self.pred.all(t),
            SplitState::Delta(d) => d.is_valid(self.pred),
        }
    }

    fn describe(&self, a: &SplitState) -> String {
        match a {
            SplitState::Proper(t) => t.to_string(),
            SplitState::Delta(d) => d.to_string(),
        }
    }
}

/// Every element of the domain over `ids` and `records`, propers first.
pub fn all_split_states(dom: &SplitDomain, ids: &[TaskId], records: &[TaskRecord]) -> Vec<SplitState> {
    let pred = dom.pred;
    let visible: Vec<_> = records.iter().filter(|r| pred.holds(r)).cloned().collect();
    let mut out: Vec<SplitState> =
        super::dt::all_tables(ids, &visible).into_iter().map(SplitState::Proper).collect();
    let mut deltas = vec![SplitDelta::empty()];
    for id in ids {
        let mut next = Vec::new();
        for d in &deltas {
            next.push(d.clone());
            for r in records {
                let one: Tasks = [(id.clone(), r.clone())].into_iter().collect();
                let mut e = d.clone();
                if pred.holds(r) {
                    e.visible = e.visible.upsert(&one);
                } else {
                    e.hidden = e.hidden.upsert(&one);
                }
                next.push(e);
            }
            let mut e = d.clone();
            e.del.insert(id.clone());
            next.push(e);
        }
        deltas = next;
    }
    out.extend(deltas.into_iter().map(SplitState::Delta));
    out
}
