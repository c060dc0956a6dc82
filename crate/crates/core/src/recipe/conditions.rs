use super::su::{gen_iposet, SuElement};
use super::UpdateSpace;
use crate::iposet::{Enumerable, IPoset};
use crate::{Rule, ValidationReport};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// The three conditions that together make the generated i-poset duplicable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `⊕_U` respects `Ran(s, -)` for every `s`.
    G1,
    /// `⊕_U` is total on every down-set `{u' | u' ≤_U u}`.
    G2,
    /// `⊕_U` is total and closed on `{u | ⟦u⟧(s) = s}` for every `s`.
    G3,
}

impl Condition {
    pub const ALL: [Condition; 3] = [Condition::G1, Condition::G2, Condition::G3];

    fn rule(self) -> Rule {
        match self {
            Condition::G1 => Rule::G1,
            Condition::G2 => Rule::G2,
            Condition::G3 => Rule::G3,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.rule(), f)
    }
}

pub fn check_condition(us: &UpdateSpace, which: Condition) -> ValidationReport {
    let (ns, nu) = (us.n_states(), us.n_updates());
    let ds = |s: usize| us.states()[s].clone();
    let du = |u: usize| us.updates()[u].clone();
    let undefined = || String::from("undefined");
    let mut report = ValidationReport::new();
    match which {
        Condition::G1 => {
            for s in 0..ns {
                for u1 in 0..nu {
                    for u2 in 0..nu {
                        let Some(m) = us.merge_u(u1, u2) else { continue };
                        let (r1, r2, rm) = (us.ran(s, u1), us.ran(s, u2), us.ran(s, m));
                        for t in r1.iter().filter(|t| r2.contains(t) && !rm.contains(t)) {
                            report.push(Rule::G1, vec![ds(s), du(u1), du(u2), du(m), ds(*t)]);
                        }
                    }
                }
            }
        }
        Condition::G2 => {
            for u in 0..nu {
                let below: Vec<usize> = (0..nu).filter(|&x| us.le_u(x, u)).collect();
                for &a in &below {
                    for &b in &below {
                        if us.merge_u(a, b).is_none() {
                            report.push(Rule::G2, vec![du(u), du(a), du(b)]);
                        }
                    }
                }
            }
        }
        Condition::G3 => {
            for s in 0..ns {
                let fixing: Vec<usize> = (0..nu).filter(|&u| us.interp(u, s) == Some(s)).collect();
                for &a in &fixing {
                    for &b in &fixing {
                        match us.merge_u(a, b) {
                            None => report.push(Rule::G3, vec![ds(s), du(a), du(b), undefined()]),
                            Some(m) if !fixing.contains(&m) => report.push(Rule::G3, vec![ds(s), du(a), du(b), du(m)]),
                            Some(_) => {}
                        }
                    }
                }
            }
        }
    }
    report
}

/// Conditions on the update space that imply one of the G conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sufficient {
    /// Any common possible result of `u1` and `u2` is a possible result of
    /// some common refinement. Implies G1.
    FineEnough,
    /// `⊕_U` is defined on comparable pairs and associative, including
    /// definedness. Implies G2.
    AssociativeJoin,
}

impl Sufficient {
    pub fn implies(self) -> Condition {
        match self {
            Sufficient::FineEnough => Condition::G1,
            Sufficient::AssociativeJoin => Condition::G2,
        }
    }
}

/// A sufficient condition checked next to the condition it implies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SufficientReport {
    pub which: Sufficient,
    pub report: ValidationReport,
    pub implied: Condition,
    pub implied_report: ValidationReport,
}

impl SufficientReport {
    /// False only when the sufficient condition holds and the implied one fails.
    pub fn implication_holds(&self) -> bool {
        !self.report.is_ok() || self.implied_report.is_ok()
    }
}

pub fn check_sufficient(us: &UpdateSpace, which: Sufficient) -> SufficientReport {
    let (ns, nu) = (us.n_states(), us.n_updates());
    let ds = |s: usize| us.states()[s].clone();
    let du = |u: usize| us.updates()[u].clone();
    let shown = |m: Option<usize>| m.map_or_else(|| String::from("undefined"), du);
    let mut report = ValidationReport::new();
    match which {
        Sufficient::FineEnough => {
            for s in 0..ns {
                for u1 in 0..nu {
                    for u2 in 0..nu {
                        let r2 = us.ran(s, u2);
                        for t in us.ran(s, u1).into_iter().filter(|t| r2.contains(t)) {
                            let refined = (0..nu)
                                .any(|u| us.le_u(u1, u) && us.le_u(u2, u) && us.ran(s, u).contains(&t));
                            if !refined {
                                report.push(Rule::FineEnough, vec![ds(s), du(u1), du(u2), ds(t)]);
                            }
                        }
                    }
                }
            }
        }
        Sufficient::AssociativeJoin => {
            for a in 0..nu {
                for b in 0..nu {
                    if (us.le_u(a, b) || us.le_u(b, a)) && us.merge_u(a, b).is_none() {
                        report.push(Rule::MergeOnComparables, vec![du(a), du(b)]);
                    }
                    for c in 0..nu {
                        let left = us.merge_u(b, c).and_then(|bc| us.merge_u(a, bc));
                        let right = us.merge_u(a, b).and_then(|ab| us.merge_u(ab, c));
                        if left != right {
                            report.push(Rule::MergeAssociative, vec![du(a), du(b), du(c), shown(left), shown(right)]);
                        }
                    }
                }
            }
        }
    }
    let implied = which.implies();
    SufficientReport { which, report, implied, implied_report: check_condition(us, implied) }
}

/// An element of the state-eliminated domain `S ∪ U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Erased {
    Proper(usize),
    Update(usize),
}

/// Forgets the origin of a pair.
pub fn erase(a: &SuElement) -> Erased {
    match *a {
        SuElement::Proper(s) => Erased::Proper(s),
        SuElement::Pair(_, u) => Erased::Update(u),
    }
}

/// The recipe with origins dropped: `u ≤ s'` iff `s' ∈ Ran(u) = ⋃_s Ran(s, u)`.
#[derive(Clone, Debug)]
pub struct ErasedIPoset {
    space: Arc<UpdateSpace>,
    ran: Arc<Vec<Vec<usize>>>,
}

pub fn eliminate_states(us: &UpdateSpace) -> ErasedIPoset {
    let ran = (0..us.n_updates()).map(|u| us.ran_erased(u)).collect();
    ErasedIPoset { space: Arc::new(us.clone()), ran: Arc::new(ran) }
}

impl IPoset for ErasedIPoset {
    type Elem = Erased;

    fn le(&self, a: &Erased, b: &Erased) -> bool {
        match (*a, *b) {
            (Erased::Proper(s), Erased::Proper(t)) => s == t,
            (Erased::Update(u), Erased::Update(u2)) => self.space.le_u(u, u2),
            (Erased::Update(u), Erased::Proper(t)) => self.ran[u].contains(&t),
            (Erased::Proper(_), Erased::Update(_)) => false,
        }
    }

    fn identical(&self, a: &Erased, b: &Erased) -> bool {
        match (*a, *b) {
            (Erased::Update(u), Erased::Proper(t)) => self.space.interp(u, t) == Some(t),
            _ => self.le(a, b),
        }
    }

    fn merge(&self, a: &Erased, b: &Erased) -> Option<Erased> {
        match (*a, *b) {
            (Erased::Proper(s), Erased::Proper(t)) => (s == t).then_some(Erased::Proper(s)),
            (Erased::Update(u), Erased::Proper(t)) | (Erased::Proper(t), Erased::Update(u)) => {
                self.ran[u].contains(&t).then_some(Erased::Proper(t))
            }
            (Erased::Update(u), Erased::Update(u2)) => self.space.merge_u(u, u2).map(Erased::Update),
        }
    }

    fn has_merge(&self) -> bool {
        true
    }

    fn contains(&self, a: &Erased) -> bool {
        match *a {
            Erased::Proper(s) => s < self.space.n_states(),
            Erased::Update(u) => u < self.space.n_updates(),
        }
    }

    fn describe(&self, a: &Erased) -> String {
        match *a {
            Erased::Proper(s) => self.space.states()[s].clone(),
            Erased::Update(u) => self.space.updates()[u].clone(),
        }
    }
}

impl Enumerable for ErasedIPoset {
    fn elements(&self) -> Vec<Erased> {
        let propers = (0..self.space.n_states()).map(Erased::Proper);
        propers.chain((0..self.space.n_updates()).map(Erased::Update)).collect()
    }
}

/// Checks that `⊕_U` respects the origin-erased `Ran`, and that wherever
/// `⊕_{S,U}` is defined, merging the erased operands gives the erased result.
pub fn check_erasure(us: &UpdateSpace) -> ValidationReport {
    let mut report = ValidationReport::new();
    let nu = us.n_updates();
    for u1 in 0..nu {
        for u2 in 0..nu {
            let Some(m) = us.merge_u(u1, u2) else { continue };
            let (r1, r2, rm) = (us.ran_erased(u1), us.ran_erased(u2), us.ran_erased(m));
            for t in r1.iter().filter(|t| r2.contains(t) && !rm.contains(t)) {
                report.push(
                    Rule::ErasedRanRespected,
                    vec![us.updates()[u1].clone(), us.updates()[u2].clone(), us.states()[*t].clone()],
                );
            }
        }
    }
    let (gen, erased) = (gen_iposet(us), eliminate_states(us));
    let xs = gen.elements();
    for a in &xs {
        for b in &xs {
            if let Some(m) = gen.merge(a, b) {
                let e = erased.merge(&erase(a), &erase(b));
                if e != Some(erase(&m)) {
                    let shown = e.map_or_else(|| "undefined".to_string(), |x| erased.describe(&x));
                    report.push(Rule::ErasureAgreement, vec![gen.describe(a), gen.describe(b), gen.describe(&m), shown]);
                }
            }
        }
    }
    report
}
