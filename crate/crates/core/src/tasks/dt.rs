//! The proper task tables `Tasks`, the delta domain `DT`, and `init_tasks`.

use super::model::{show_ids, TaskError, TaskId, TaskRecord, Tasks};
use crate::iposet::{Bounded, IPoset};
use crate::lens::Initiator;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

/// An addition/deletion request `(A, D)` with `D` disjoint from `dom(A)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Delta {
    add: Tasks,
    del: BTreeSet<TaskId>,
}

impl Delta {
    /// Rejects a delta that both upserts and deletes one id.
    pub fn new(add: Tasks, del: BTreeSet<TaskId>) -> Result<Delta, TaskError> {
        if let Some(k) = del.iter().find(|k| add.contains(k)) {
            return Err(TaskError::UpsertAndDelete(k.clone()));
        }
        Ok(Delta { add, del })
    }

    /// `(∅, ∅)`.
    pub fn empty() -> Delta {
        Delta::default()
    }

    pub fn add(&self) -> &Tasks {
        &self.add
    }

    pub fn del(&self) -> &BTreeSet<TaskId> {
        &self.del
    }

    pub fn is_empty(&self) -> bool {
        self.add.is_empty() && self.del.is_empty()
    }

    /// `(A ∪ A', D ∪ D')` when it is again a valid delta.
    pub fn union(&self, other: &Delta) -> Option<Delta> {
        let add = self.add.union(&other.add)?;
        let del = self.del.union(&other.del).cloned().collect();
        Delta::new(add, del).ok()
    }

    fn is_valid(&self) -> bool {
        self.add.disjoint_from(&self.del)
    }
}

impl core::fmt::Display for Delta {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({}, {})", self.add, show_ids(&self.del))
    }
}

/// An element of `DT`: a proper table or a strictly partial delta.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DtState {
    Proper(Tasks),
    Delta(Delta),
}

impl DtState {
    /// `Ω = (∅, ∅)`.
    pub fn omega() -> DtState {
        DtState::Delta(Delta::empty())
    }
}

/// The task tables as a discrete i-poset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TasksDomain;

impl IPoset for TasksDomain {
    type Elem = Tasks;
    fn le(&self, a: &Tasks, b: &Tasks) -> bool {
        a == b
    }
    fn identical(&self, a: &Tasks, b: &Tasks) -> bool {
        a == b
    }
    fn describe(&self, a: &Tasks) -> String {
        a.to_string()
    }
}

/// The i-poset `DT` of task tables and `(A, D)` deltas, with its merge.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DtDomain;

impl IPoset for DtDomain {
    type Elem = DtState;

    fn le(&self, a: &DtState, b: &DtState) -> bool {
        match (a, b) {
            (DtState::Proper(t), DtState::Proper(u)) => t == u,
            (DtState::Delta(d), DtState::Delta(e)) => d.add.is_submap_of(&e.add) && d.del.is_subset(&e.del),
            (DtState::Delta(d), DtState::Proper(t)) => d.add.is_submap_of(t) && t.disjoint_from(&d.del),
            (DtState::Proper(_), DtState::Delta(_)) => false,
        }
    }

    fn identical(&self, a: &DtState, b: &DtState) -> bool {
        match (a, b) {
            (DtState::Delta(d), DtState::Proper(t)) => d.del.is_empty() && d.add.is_submap_of(t),
            _ => self.le(a, b),
        }
    }

    fn least(&self) -> Option<DtState> {
        Some(DtState::omega())
    }

    fn merge(&self, a: &DtState, b: &DtState) -> Option<DtState> {
        match (a, b) {
            (DtState::Proper(t), DtState::Proper(u)) => (t == u).then(|| a.clone()),
            (DtState::Delta(_), DtState::Proper(_)) => self.le(a, b).then(|| b.clone()),
            (DtState::Proper(_), DtState::Delta(_)) => self.le(b, a).then(|| a.clone()),
            (DtState::Delta(d), DtState::Delta(e)) => d.union(e).map(DtState::Delta),
        }
    }

    fn has_merge(&self) -> bool {
        true
    }

    fn contains(&self, a: &DtState) -> bool {
        match a {
            DtState::Proper(_) => true,
            DtState::Delta(d) => d.is_valid(),
        }
    }

    fn describe(&self, a: &DtState) -> String {
        match a {
            DtState::Proper(t) => t.to_string(),
            DtState::Delta(d) => d.to_string(),
        }
    }
}

/// `⟦v⟧(t)`: a proper `t'` replaces `t`; `(A, D)` upserts `A` and removes `D`.
pub fn apply_dt(v: &DtState, t: &Tasks) -> Tasks {
    match v {
        DtState::Proper(t2) => t2.clone(),
        DtState::Delta(d) => t.upsert(&d.add).without(&d.del),
    }
}

/// The initiator `Tasks → DT` over [`apply_dt`].
pub fn init_tasks() -> Initiator<TasksDomain, DtDomain> {
    Initiator::new(TasksDomain, DtDomain, |t: &Tasks| DtState::Proper(t.clone()), |v, t| Some(apply_dt(v, t)))
}

/// Every table with ids drawn from `ids` and records from `records`.
pub fn all_tables(ids: &[TaskId], records: &[TaskRecord]) -> Vec<Tasks> {
    let mut out = vec![Tasks::new()];
    for id in ids {
        let mut next = Vec::with_capacity(out.len() * (records.len() + 1));
        for t in &out {
            next.push(t.clone());
            for r in records {
                next.push(t.upsert(&[(id.clone(), r.clone())].into_iter().collect()));
            }
        }
        out = next;
    }
    out
}

/// Every valid `(A, D)` over `ids` and `records`: each id is absent,
/// upserted with one of the records, or deleted.
pub fn all_deltas(ids: &[TaskId], records: &[TaskRecord]) -> Vec<Delta> {
    let mut out = vec![Delta::empty()];
    for id in ids {
        let mut next = Vec::with_capacity(out.len() * (records.len() + 2));
        for d in &out {
            next.push(d.clone());
            for r in records {
                let mut add = d.add.clone();
                add = add.upsert(&[(id.clone(), r.clone())].into_iter().collect());
                next.push(Delta { add, del: d.del.clone() });
            }
            let mut del = d.del.clone();
            del.insert(id.clone());
            next.push(Delta { add: d.add.clone(), del });
        }
        out = next;
    }
    out
}

/// `DT` restricted to the elements over `ids` and `records`, propers first.
/// The subset is closed under every defined merge.
pub fn bounded_dt(ids: &[TaskId], records: &[TaskRecord]) -> Bounded<DtDomain> {
    let mut xs: Vec<DtState> = all_tables(ids, records).into_iter().map(DtState::Proper).collect();
    xs.extend(all_deltas(ids, records).into_iter().map(DtState::Delta));
    Bounded::new(DtDomain, xs)
}

/// The tables over `ids` and `records` as a discrete domain.
pub fn bounded_tasks(ids: &[TaskId], records: &[TaskRecord]) -> Bounded<TasksDomain> {
    Bounded::new(TasksDomain, all_tables(ids, records))
}
