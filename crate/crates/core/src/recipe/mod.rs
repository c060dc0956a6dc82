//! I-posets generated from state-update pairs.
//!
//! An [`UpdateSpace`] gives a finite set of states, a finite poset of
//! updates with a partial merge, and the meaning of each update as a partial
//! map on states. [`gen_iposet`] pairs updates with the state they were made
//! against; [`check_condition`] decides the three conditions under which the
//! result is duplicable.

mod conditions;
pub mod fixtures;
mod su;

pub use conditions::{
    check_condition, check_erasure, check_sufficient, eliminate_states, erase, Condition, Erased, ErasedIPoset,
    Sufficient, SufficientReport,
};
pub use su::{apply_su, gen_iposet, initiator, states_iposet, SuElement, SuIPoset};

use crate::{Rule, ValidationReport};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("an update space needs at least one state")]
    NoStates,
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("invalid update space:\n{0}")]
    Invalid(ValidationReport),
}

/// States `S`, updates `(U, ≤_U, ⊕_U)` and their interpretation `⟦u⟧ : S ⇀ S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpdateSpace {
    states: Vec<String>,
    updates: Vec<String>,
    le: Vec<bool>,
    merge: Vec<Option<usize>>,
    interp: Vec<Option<usize>>,
}

impl UpdateSpace {
    pub fn builder<I, J>(states: I, updates: J) -> UpdateSpaceBuilder
    where
        I: IntoIterator,
        I::Item: Into<String>,
        J: IntoIterator,
        J::Item: Into<String>,
    {
        let states: Vec<String> = states.into_iter().map(Into::into).collect();
        let updates: Vec<String> = updates.into_iter().map(Into::into).collect();
        let n = updates.len();
        let mut le = vec![false; n * n];
        let mut merge = vec![None; n * n];
        for i in 0..n {
            le[i * n + i] = true;
            merge[i * n + i] = Some(i);
        }
        let interp = vec![None; n * states.len()];
        UpdateSpaceBuilder { space: UpdateSpace { states, updates, le, merge, interp }, error: None }
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn updates(&self) -> &[String] {
        &self.updates
    }

    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn n_updates(&self) -> usize {
        self.updates.len()
    }

    pub fn state(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }

    pub fn update(&self, label: &str) -> Option<usize> {
        self.updates.iter().position(|u| u == label)
    }

    /// `u ≤_U u'`.
    pub fn le_u(&self, u: usize, u2: usize) -> bool {
        self.le[u * self.n_updates() + u2]
    }

    /// `u ⊕_U u'`.
    pub fn merge_u(&self, u: usize, u2: usize) -> Option<usize> {
        self.merge[u * self.n_updates() + u2]
    }

    /// `⟦u⟧(s)`.
    pub fn interp(&self, u: usize, s: usize) -> Option<usize> {
        self.interp[u * self.n_states() + s]
    }

    /// `Ran(s, u) = { s' | ∃u' ≥_U u. ⟦u'⟧(s) = s' }`, ascending.
    pub fn ran(&self, s: usize, u: usize) -> Vec<usize> {
        let mut out: Vec<usize> =
            (0..self.n_updates()).filter(|&u2| self.le_u(u, u2)).filter_map(|u2| self.interp(u2, s)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `Ran(u) = ⋃_s Ran(s, u)`, ascending.
    pub fn ran_erased(&self, u: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.n_states()).flat_map(|s| self.ran(s, u)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Checks that `≤_U` is a partial order and `⊕_U` computes joins.
    pub fn validate(&self) -> ValidationReport {
        let n = self.n_updates();
        let d = |u: usize| self.updates[u].clone();
        let mut report = ValidationReport::new();
        for a in 0..n {
            if !self.le_u(a, a) {
                report.push(Rule::OrderReflexive, vec![d(a)]);
            }
            for b in 0..n {
                if a != b && self.le_u(a, b) && self.le_u(b, a) {
                    report.push(Rule::OrderAntisymmetric, vec![d(a), d(b)]);
                }
                for c in 0..n {
                    if self.le_u(a, b) && self.le_u(b, c) && !self.le_u(a, c) {
                        report.push(Rule::OrderTransitive, vec![d(a), d(b), d(c)]);
                    }
                }
                if let Some(m) = self.merge_u(a, b) {
                    let j = self.join_u(a, b);
                    if j != Some(m) {
                        let shown = j.map_or_else(|| "undefined".to_string(), d);
                        report.push(Rule::UpdateMergeSound, vec![d(a), d(b), d(m), shown]);
                    }
                }
            }
        }
        report
    }

    /// The least upper bound of `u` and `u'` in `U`, if any.
    pub fn join_u(&self, u: usize, u2: usize) -> Option<usize> {
        let n = self.n_updates();
        let ubs: Vec<usize> = (0..n).filter(|&c| self.le_u(u, c) && self.le_u(u2, c)).collect();
        ubs.iter().copied().find(|&c| ubs.iter().all(|&x| self.le_u(c, x)))
    }
}

/// Incremental construction of an [`UpdateSpace`]. `≤_U` starts as the
/// identity relation and `⊕_U` as the diagonal `u ⊕ u = u`.
#[derive(Clone, Debug)]
pub struct UpdateSpaceBuilder {
    space: UpdateSpace,
    error: Option<SpaceError>,
}

impl UpdateSpaceBuilder {
    fn state_idx(&mut self, label: &str) -> Option<usize> {
        let r = self.space.state(label);
        if r.is_none() && self.error.is_none() {
            self.error = Some(SpaceError::UnknownLabel(label.to_string()));
        }
        r
    }

    fn update_idx(&mut self, label: &str) -> Option<usize> {
        let r = self.space.update(label);
        if r.is_none() && self.error.is_none() {
            self.error = Some(SpaceError::UnknownLabel(label.to_string()));
        }
        r
    }

    pub fn le_idx(mut self, a: usize, b: usize) -> Self {
        let n = self.space.n_updates();
        self.space.le[a * n + b] = true;
        self
    }

    pub fn merge_idx(mut self, a: usize, b: usize, c: Option<usize>) -> Self {
        let n = self.space.n_updates();
        self.space.merge[a * n + b] = c;
        self.space.merge[b * n + a] = c;
        self
    }

    pub fn interp_idx(mut self, u: usize, s: usize, result: Option<usize>) -> Self {
        let n = self.space.n_states();
        self.space.interp[u * n + s] = result;
        self
    }

    pub fn le(mut self, a: &str, b: &str) -> Self {
        match (self.update_idx(a), self.update_idx(b)) {
            (Some(a), Some(b)) => self.le_idx(a, b),
            _ => self,
        }
    }

    /// Declares `a ⊕_U b = c` (and symmetrically).
    pub fn merge(mut self, a: &str, b: &str, c: &str) -> Self {
        match (self.update_idx(a), self.update_idx(b), self.update_idx(c)) {
            (Some(a), Some(b), Some(c)) => self.merge_idx(a, b, Some(c)),
            _ => self,
        }
    }

    /// Declares `a ⊕_U b` undefined.
    pub fn no_merge(mut self, a: &str, b: &str) -> Self {
        match (self.update_idx(a), self.update_idx(b)) {
            (Some(a), Some(b)) => self.merge_idx(a, b, None),
            _ => self,
        }
    }

    /// Declares `⟦u⟧(s) = t`.
    pub fn interp(mut self, u: &str, s: &str, t: &str) -> Self {
        match (self.update_idx(u), self.state_idx(s), self.state_idx(t)) {
            (Some(u), Some(s), Some(t)) => self.interp_idx(u, s, Some(t)),
            _ => self,
        }
    }

    /// Closes `≤_U` under transitivity.
    pub fn close_order(mut self) -> Self {
        let n = self.space.n_updates();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if self.space.le[i * n + k] && self.space.le[k * n + j] {
                        self.space.le[i * n + j] = true;
                    }
                }
            }
        }
        self
    }

    /// Sets `⊕_U` to the join wherever the join exists.
    pub fn join_merge(mut self) -> Self {
        let n = self.space.n_updates();
        for a in 0..n {
            for b in 0..n {
                self.space.merge[a * n + b] = self.space.join_u(a, b);
            }
        }
        self
    }

    pub fn build(self) -> Result<UpdateSpace, SpaceError> {
        if let Some(e) = self.error {
            return Err(e);
        }
        let s = self.space;
        if s.states.is_empty() {
            return Err(SpaceError::NoStates);
        }
        for labels in [&s.states, &s.updates] {
            for (i, l) in labels.iter().enumerate() {
                if labels[..i].contains(l) {
                    return Err(SpaceError::DuplicateLabel(l.clone()));
                }
            }
        }
        let report = s.validate();
        if report.is_ok() {
            Ok(s)
        } else {
            Err(SpaceError::Invalid(report))
        }
    }
}
