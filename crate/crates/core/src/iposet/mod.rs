//! I-posets: partially ordered sets with a relation of identical updates.
//!
//! For an i-poset `(S, ≤, I)`, `a ≤ b` reads "`a` is less specified than, or
//! preserved in, `b`", and `a ∈ I_b` reads "`a` represents no update with
//! respect to `b`". `I` must be reflexive and contained in `≤`; transitivity of
//! `I` is not required and never checked. A least element `Ω`, when present,
//! must be an identical update for every element. An optional partial merge
//! `⊕` must compute joins soundly; it is what the duplication lens needs.

mod construct;
mod enumerate;
mod finite;

pub use construct::{
    build_standard, materialize, Bounded, Predicate, Discrete, Lift, Lifted, NonMonotonePredicate, Powerset, Product,
    Restrict, StandardKind, Sum, Tagged, BuildError,
};
pub use enumerate::{all_posets, identity_variants};
pub use finite::{FiniteIPoset, FiniteIPosetBuilder, IPosetError, Point};

use crate::report::{Rule, ValidationReport};
use alloc::string::String;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

/// An i-poset over elements of type [`IPoset::Elem`].
///
/// Infinite domains implement only this trait; the law harness then quantifies
/// over caller-supplied samples. Finite domains also implement [`Enumerable`].
pub trait IPoset {
    type Elem: Clone + PartialEq + Debug;

    /// `a ≤ b`.
    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// `a ∈ I_b`.
    fn identical(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn least(&self) -> Option<Self::Elem> {
        None
    }

    /// The merge `a ⊕ b`, `None` where undefined or when no merge is attached.
    fn merge(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn has_merge(&self) -> bool {
        false
    }

    /// Carrier membership, for domains whose element type is wider than the
    /// carrier (restrictions, deltas with invariants).
    fn contains(&self, _a: &Self::Elem) -> bool {
        true
    }

    /// Human-readable rendering used in witnesses and reports.
    fn describe(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }
}

/// An i-poset with a finite, listable carrier.
pub trait Enumerable: IPoset {
    fn elements(&self) -> Vec<Self::Elem>;
}

impl<P: IPoset + ?Sized> IPoset for &P {
    type Elem = P::Elem;
    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        (**self).le(a, b)
    }
    fn identical(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        (**self).identical(a, b)
    }
    fn least(&self) -> Option<Self::Elem> {
        (**self).least()
    }
    fn merge(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        (**self).merge(a, b)
    }
    fn has_merge(&self) -> bool {
        (**self).has_merge()
    }
    fn contains(&self, a: &Self::Elem) -> bool {
        (**self).contains(a)
    }
    fn describe(&self, a: &Self::Elem) -> String {
        (**self).describe(a)
    }
}

impl<P: Enumerable + ?Sized> Enumerable for &P {
    fn elements(&self) -> Vec<Self::Elem> {
        (**self).elements()
    }
}

/// Raised by [`check_duplicable`] when the i-poset has no merge operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("no merge operation is attached to the i-poset")]
pub struct MissingMerge;

/// The least upper bound of `a` and `b`, if one exists.
pub fn join<P: Enumerable>(p: &P, a: &P::Elem, b: &P::Elem) -> Option<P::Elem> {
    join_in(p, &p.elements(), a, b)
}

/// [`join`] against an already listed carrier.
pub fn join_in<P: IPoset>(p: &P, carrier: &[P::Elem], a: &P::Elem, b: &P::Elem) -> Option<P::Elem> {
    let upper: Vec<&P::Elem> = carrier.iter().filter(|x| p.le(a, x) && p.le(b, x)).collect();
    upper
        .iter()
        .find(|m| upper.iter().all(|x| p.le(m, x)))
        .map(|m| (*m).clone())
}

/// Checks every i-poset axiom over the whole carrier.
///
/// The report lists each violated axiom with its witnesses; it is empty
/// exactly when `p` is a valid i-poset whose merge (if any) is sound.
pub fn verify_iposet<P: Enumerable>(p: &P) -> ValidationReport {
    let xs = p.elements();
    let mut report = ValidationReport::new();
    let d = |x: &P::Elem| p.describe(x);

    for a in &xs {
        if !p.le(a, a) {
            report.push(Rule::OrderReflexive, vec![d(a)]);
        }
        if !p.identical(a, a) {
            report.push(Rule::IdentityReflexive, vec![d(a)]);
        }
    }
    for (i, a) in xs.iter().enumerate() {
        for (j, b) in xs.iter().enumerate() {
            if i < j && p.le(a, b) && p.le(b, a) {
                report.push(Rule::OrderAntisymmetric, vec![d(a), d(b)]);
            }
            if p.identical(a, b) && !p.le(a, b) {
                report.push(Rule::IdentityWithinOrder, vec![d(a), d(b)]);
            }
        }
    }
    for a in &xs {
        for b in xs.iter().filter(|b| p.le(a, b)) {
            for c in xs.iter().filter(|c| p.le(b, c)) {
                if !p.le(a, c) {
                    report.push(Rule::OrderTransitive, vec![d(a), d(b), d(c)]);
                }
            }
        }
    }

    if let Some(omega) = p.least() {
        for s in &xs {
            if !p.le(&omega, s) {
                report.push(Rule::LeastBelowAll, vec![d(&omega), d(s)]);
            }
        }
    }
    if let Some(omega) = xs.iter().find(|o| xs.iter().all(|s| p.le(o, s))) {
        for s in &xs {
            if !p.identical(omega, s) {
                report.push(Rule::LeastIdentical, vec![d(omega), d(s)]);
            }
        }
    }

    if p.has_merge() {
        for a in &xs {
            for b in &xs {
                if let Some(z) = p.merge(a, b) {
                    let j = join_in(p, &xs, a, b);
                    if j.as_ref() != Some(&z) {
                        let shown = j.as_ref().map_or_else(|| String::from("undefined"), d);
                        report.push(Rule::MergeSound, vec![d(a), d(b), d(&z), shown]);
                    }
                }
            }
        }
    }
    report
}

/// Checks that the attached merge makes `p` duplicable: it computes joins
/// soundly, and it is total and closed on every `I_z`.
pub fn check_duplicable<P: Enumerable>(p: &P) -> Result<ValidationReport, MissingMerge> {
    if !p.has_merge() {
        return Err(MissingMerge);
    }
    let xs = p.elements();
    let d = |x: &P::Elem| p.describe(x);
    let mut report = ValidationReport::new();

    for a in &xs {
        for b in &xs {
            if let Some(z) = p.merge(a, b) {
                let j = join_in(p, &xs, a, b);
                if j.as_ref() != Some(&z) {
                    let shown = j.as_ref().map_or_else(|| String::from("undefined"), d);
                    report.push(Rule::MergeSound, vec![d(a), d(b), d(&z), shown]);
                }
            }
        }
    }
    for z in &xs {
        let ids: Vec<&P::Elem> = xs.iter().filter(|x| p.identical(x, z)).collect();
        for a in &ids {
            for b in &ids {
                match p.merge(a, b) {
                    None => report.push(Rule::MergeTotalOnIdentities, vec![d(a), d(b), d(z)]),
                    Some(m) if !p.identical(&m, z) => {
                        report.push(Rule::MergeClosedOnIdentities, vec![d(a), d(b), d(z), d(&m)])
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(report)
}
