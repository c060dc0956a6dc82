//! Standard constructions: discrete sets, lifting, products, sums, powersets
//! and restrictions. All are point-wise in `≤`, `I` and `⊕`.

use super::{Enumerable, FiniteIPoset, IPoset, IPosetError};
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::{self, Debug};

/// A finite discrete i-poset over arbitrary values; merge is the diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct Discrete<T> {
    elements: Vec<T>,
}

impl<T: Clone + PartialEq + Debug> Discrete<T> {
    pub fn new(elements: Vec<T>) -> Self {
        let mut uniq: Vec<T> = Vec::with_capacity(elements.len());
        for e in elements {
            if !uniq.contains(&e) {
                uniq.push(e);
            }
        }
        Discrete { elements: uniq }
    }
}

impl<T: Clone + PartialEq + Debug> IPoset for Discrete<T> {
    type Elem = T;
    fn le(&self, a: &T, b: &T) -> bool {
        a == b
    }
    fn identical(&self, a: &T, b: &T) -> bool {
        a == b
    }
    fn least(&self) -> Option<T> {
        match self.elements.as_slice() {
            [only] => Some(only.clone()),
            _ => None,
        }
    }
    fn merge(&self, a: &T, b: &T) -> Option<T> {
        (a == b).then(|| a.clone())
    }
    fn has_merge(&self) -> bool {
        true
    }
    fn contains(&self, a: &T) -> bool {
        self.elements.contains(a)
    }
}

impl<T: Clone + PartialEq + Debug> Enumerable for Discrete<T> {
    fn elements(&self) -> Vec<T> {
        self.elements.clone()
    }
}

/// An element of a lifted domain `P_Ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lift<E> {
    Omega,
    Elem(E),
}

/// `P_Ω`: `P` with a fresh least element `Ω` that is identical for everything.
#[derive(Clone, Debug, PartialEq)]
pub struct Lifted<P> {
    pub inner: P,
}

impl<P: IPoset> Lifted<P> {
    pub fn new(inner: P) -> Self {
        Lifted { inner }
    }
}

impl<P: IPoset> IPoset for Lifted<P> {
    type Elem = Lift<P::Elem>;
    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        match (a, b) {
            (Lift::Omega, _) => true,
            (Lift::Elem(_), Lift::Omega) => false,
            (Lift::Elem(x), Lift::Elem(y)) => self.inner.le(x, y),
        }
    }
    fn identical(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        match (a, b) {
            (Lift::Omega, _) => true,
            (Lift::Elem(_), Lift::Omega) => false,
            (Lift::Elem(x), Lift::Elem(y)) => self.inner.identical(x, y),
        }
    }
    fn least(&self) -> Option<Self::Elem> {
        Some(Lift::Omega)
    }
    fn merge(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        match (a, b) {
            (Lift::Omega, x) | (x, Lift::Omega) => Some(x.clone()),
            (Lift::Elem(x), Lift::Elem(y)) => self.inner.merge(x, y).map(Lift::Elem),
        }
    }
    fn has_merge(&self) -> bool {
        self.inner.has_merge()
    }
    fn contains(&self, a: &Self::Elem) -> bool {
        match a {
            Lift::Omega => true,
            Lift::Elem(x) => self.inner.contains(x),
        }
    }
    fn describe(&self, a: &Self::Elem) -> String {
        match a {
            Lift::Omega => String::from("Ω"),
            Lift::Elem(x) => self.inner.describe(x),
        }
    }
}

impl<P: Enumerable> Enumerable for Lifted<P> {
    fn elements(&self) -> Vec<Self::Elem> {
        core::iter::once(Lift::Omega).chain(self.inner.elements().into_iter().map(Lift::Elem)).collect()
    }
}

/// `P × Q` with component-wise relations and merge.
#[derive(Clone, Debug, PartialEq)]
pub struct Product<P, Q> {
    pub left: P,
    pub right: Q,
}

impl<P: IPoset, Q: IPoset> Product<P, Q> {
    pub fn new(left: P, right: Q) -> Self {
        Product { left, right }
    }
}

impl<P: IPoset, Q: IPoset> IPoset for Product<P, Q> {
    type Elem = (P::Elem, Q::Elem);
    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.left.le(&a.0, &b.0) && self.right.le(&a.1, &b.1)
    }
    fn identical(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.left.identical(&a.0, &b.0) && self.right.identical(&a.1, &b.1)
    }
    fn least(&self) -> Option<Self::Elem> {
        Some((self.left.least()?, self.right.least()?))
    }
    fn merge(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some((self.left.merge(&a.0, &b.0)?, self.right.merge(&a.1, &b.1)?))
    }
    fn has_merge(&self) -> bool {
        self.left.has_merge() && self.right.has_merge()
    }
    fn contains(&self, a: &Self::Elem) -> bool {
        self.left.contains(&a.0) && self.right.contains(&a.1)
    }
    fn describe(&self, a: &Self::Elem) -> String {
        format!("({}, {})", self.left.describe(&a.0), self.right.describe(&a.1))
    }
}

impl<P: Enumerable, Q: Enumerable> Enumerable for Product<P, Q> {
    fn elements(&self) -> Vec<Self::Elem> {
        let rs = self.right.elements();
        self.left
            .elements()
            .into_iter()
            .flat_map(|l| rs.iter().map(move |r| (l.clone(), r.clone())))
            .collect()
    }
}

/// An element of a sum domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tagged<A, B> {
    InL(A),
    InR(B),
}

/// `P + Q`: relations and merge within each side; elements with different
/// tags are incomparable and never merge.
#[derive(Clone, Debug, PartialEq)]
pub struct Sum<P, Q> {
    pub left: P,
    pub right: Q,
}

impl<P: IPoset, Q: IPoset> Sum<P, Q> {
    pub fn new(left: P, right: Q) -> Self {
        Sum { left, right }
    }
}

impl<P: IPoset, Q: IPoset> IPoset for Sum<P, Q> {
    type Elem = Tagged<P::Elem, Q::Elem>;
    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        match (a, b) {
            (Tagged::InL(x), Tagged::InL(y)) => self.left.le(x, y),
            (Tagged::InR(x), Tagged::InR(y)) => self.right.le(x, y),
            _ => false,
        }
    }
    fn identical(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        match (a, b) {
            (Tagged::InL(x), Tagged::InL(y)) => self.left.identical(x, y),
            (Tagged::InR(x), Tagged::InR(y)) => self.right.identical(x, y),
            _ => false,
        }
    }
    fn merge(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        match (a, b) {
            (Tagged::InL(x), Tagged::InL(y)) => self.left.merge(x, y).map(Tagged::InL),
            (Tagged::InR(x), Tagged::InR(y)) => self.right.merge(x, y).map(Tagged::InR),
            _ => None,
        }
    }
    fn has_merge(&self) -> bool {
        self.left.has_merge() && self.right.has_merge()
    }
    fn contains(&self, a: &Self::Elem) -> bool {
        match a {
            Tagged::InL(x) => self.left.contains(x),
            Tagged::InR(x) => self.right.contains(x),
        }
    }
    fn describe(&self, a: &Self::Elem) -> String {
        match a {
            Tagged::InL(x) => format!("InL {}", self.left.describe(x)),
            Tagged::InR(x) => format!("InR {}", self.right.describe(x)),
        }
    }
}

impl<P: Enumerable, Q: Enumerable> Enumerable for Sum<P, Q> {
    fn elements(&self) -> Vec<Self::Elem> {
        let ls = self.left.elements().into_iter().map(Tagged::InL);
        ls.chain(self.right.elements().into_iter().map(Tagged::InR)).collect()
    }
}

/// `(2^S, ⊇, ⊇)` over a finite base set, with merge = intersection.
///
/// By default the empty set is excluded, which makes merge partial: two
/// requests with nothing in common conflict instead of producing `∅`.
#[derive(Clone, Debug, PartialEq)]
pub struct Powerset<T> {
    base: BTreeSet<T>,
    exclude_empty: bool,
}

impl<T: Ord + Clone + Debug> Powerset<T> {
    pub fn new(base: impl IntoIterator<Item = T>) -> Self {
        Powerset { base: base.into_iter().collect(), exclude_empty: true }
    }

    pub fn including_empty(mut self) -> Self {
        self.exclude_empty = false;
        self
    }
}

impl<T: Ord + Clone + Debug> IPoset for Powerset<T> {
    type Elem = BTreeSet<T>;
    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a.is_superset(b)
    }
    fn identical(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a.is_superset(b)
    }
    fn least(&self) -> Option<Self::Elem> {
        (!(self.exclude_empty && self.base.is_empty())).then(|| self.base.clone())
    }
    fn merge(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        let m: BTreeSet<T> = a.intersection(b).cloned().collect();
        (!(self.exclude_empty && m.is_empty())).then_some(m)
    }
    fn has_merge(&self) -> bool {
        true
    }
    fn contains(&self, a: &Self::Elem) -> bool {
        a.is_subset(&self.base) && !(self.exclude_empty && a.is_empty())
    }
    fn describe(&self, a: &Self::Elem) -> String {
        let items: Vec<String> = a.iter().map(|x| format!("{x:?}")).collect();
        format!("{{{}}}", items.join(","))
    }
}

impl<T: Ord + Clone + Debug> Enumerable for Powerset<T> {
    fn elements(&self) -> Vec<Self::Elem> {
        let base: Vec<&T> = self.base.iter().collect();
        let skip = usize::from(self.exclude_empty);
        (skip..1usize << base.len())
            .map(|mask| base.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| (*x).clone()).collect())
            .collect()
    }
}

/// A predicate used by [`Restrict`].
pub type Predicate<E> = Arc<dyn Fn(&E) -> bool + Send + Sync>;

/// `P_φ`: the elements of `P` satisfying a monotone (upward-closed) predicate.
#[derive(Clone)]
pub struct Restrict<P: IPoset> {
    pub inner: P,
    pred: Predicate<P::Elem>,
}

impl<P: IPoset + Debug> Debug for Restrict<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Restrict").field("inner", &self.inner).finish_non_exhaustive()
    }
}

/// A predicate that is not upward closed: it holds on `below` but not on
/// `above` although `below ≤ above`.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("predicate is not monotone: holds on {below} but not on {above}")]
pub struct NonMonotonePredicate {
    pub below: String,
    pub above: String,
}

impl<P: IPoset> Restrict<P> {
    /// Restriction without a monotonicity check, for infinite carriers.
    pub fn new(inner: P, pred: impl Fn(&P::Elem) -> bool + Send + Sync + 'static) -> Self {
        Restrict { inner, pred: Arc::new(pred) }
    }

    pub fn holds(&self, a: &P::Elem) -> bool {
        (self.pred)(a)
    }
}

impl<P: Enumerable> Restrict<P> {
    /// Restriction of a finite carrier, rejecting non-monotone predicates.
    pub fn checked(
        inner: P,
        pred: impl Fn(&P::Elem) -> bool + Send + Sync + 'static,
    ) -> Result<Self, NonMonotonePredicate> {
        let r = Self::new(inner, pred);
        let xs = r.inner.elements();
        for a in xs.iter().filter(|a| r.holds(a)) {
            if let Some(b) = xs.iter().find(|b| r.inner.le(a, b) && !r.holds(b)) {
                return Err(NonMonotonePredicate { below: r.inner.describe(a), above: r.inner.describe(b) });
            }
        }
        Ok(r)
    }
}

impl<P: IPoset> IPoset for Restrict<P> {
    type Elem = P::Elem;
    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.inner.le(a, b)
    }
    fn identical(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.inner.identical(a, b)
    }
    fn least(&self) -> Option<Self::Elem> {
        self.inner.least().filter(|o| self.holds(o))
    }
    fn merge(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inner.merge(a, b).filter(|m| self.holds(m))
    }
    fn has_merge(&self) -> bool {
        self.inner.has_merge()
    }
    fn contains(&self, a: &Self::Elem) -> bool {
        self.inner.contains(a) && self.holds(a)
    }
    fn describe(&self, a: &Self::Elem) -> String {
        self.inner.describe(a)
    }
}

impl<P: Enumerable> Enumerable for Restrict<P> {
    fn elements(&self) -> Vec<Self::Elem> {
        self.inner.elements().into_iter().filter(|a| self.holds(a)).collect()
    }
}

/// An infinite i-poset seen through a finite subset of its carrier.
///
/// Relations and merge are the inner domain's; `elements` returns the subset.
/// Joins computed against the subset agree with the inner domain's only when
/// the subset is closed under the joins in question.
#[derive(Clone, Debug)]
pub struct Bounded<P: IPoset> {
    pub inner: P,
    elements: Vec<P::Elem>,
}

impl<P: IPoset> Bounded<P> {
    pub fn new(inner: P, elements: Vec<P::Elem>) -> Self {
        Bounded { inner, elements }
    }
}

impl<P: IPoset> IPoset for Bounded<P> {
    type Elem = P::Elem;
    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.inner.le(a, b)
    }
    fn identical(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.inner.identical(a, b)
    }
    fn least(&self) -> Option<Self::Elem> {
        self.inner.least()
    }
    fn merge(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inner.merge(a, b)
    }
    fn has_merge(&self) -> bool {
        self.inner.has_merge()
    }
    fn contains(&self, a: &Self::Elem) -> bool {
        self.inner.contains(a)
    }
    fn describe(&self, a: &Self::Elem) -> String {
        self.inner.describe(a)
    }
}

impl<P: IPoset> Enumerable for Bounded<P> {
    fn elements(&self) -> Vec<Self::Elem> {
        self.elements.clone()
    }
}

/// Copies any enumerable i-poset into explicit tables.
///
/// Returns the tables together with the element behind each [`super::Point`].
/// Labels come from [`IPoset::describe`]. No validation is performed.
pub fn materialize<P: Enumerable>(p: &P) -> (FiniteIPoset, Vec<P::Elem>) {
    let xs = p.elements();
    let labels = xs.iter().map(|x| p.describe(x)).collect();
    let merge = |a: usize, b: usize| p.merge(&xs[a], &xs[b]).and_then(|m| xs.iter().position(|x| *x == m));
    let merge: Option<&dyn Fn(usize, usize) -> Option<usize>> = if p.has_merge() { Some(&merge) } else { None };
    let f = FiniteIPoset::from_relations_unchecked(
        labels,
        |a, b| p.le(&xs[a], &xs[b]),
        |a, b| p.identical(&xs[a], &xs[b]),
        merge,
    );
    (f, xs)
}

/// Which construction [`build_standard`] applies to its finite arguments.
#[derive(Clone, Debug, PartialEq)]
pub enum StandardKind {
    /// A discrete i-poset over the given labels; takes no arguments.
    Discrete(Vec<String>),
    /// `P_Ω`; takes one argument.
    LiftOmega,
    /// `P × Q`; takes two arguments.
    Product,
    /// `P + Q`; takes two arguments.
    Sum,
    /// `(2^S, ⊇, ⊇)` over the labels; takes no arguments.
    Powerset { base: Vec<String>, exclude_empty: bool },
    /// `P_φ` where `φ` is given as one flag per element; takes one argument.
    Restrict(Vec<bool>),
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum BuildError {
    #[error("construction takes {expected} argument(s), got {got}")]
    InvalidArgs { expected: usize, got: usize },
    #[error("restriction mask has {got} entries for {expected} elements")]
    MaskLength { expected: usize, got: usize },
    #[error(transparent)]
    NonMonotonePredicate(#[from] NonMonotonePredicate),
    #[error(transparent)]
    Invalid(#[from] IPosetError),
}

/// Applies a standard construction to explicit i-posets and returns the
/// result as explicit tables.
pub fn build_standard(kind: StandardKind, args: &[FiniteIPoset]) -> Result<FiniteIPoset, BuildError> {
    let arity = match kind {
        StandardKind::Discrete(_) | StandardKind::Powerset { .. } => 0,
        StandardKind::LiftOmega | StandardKind::Restrict(_) => 1,
        StandardKind::Product | StandardKind::Sum => 2,
    };
    if args.len() != arity {
        return Err(BuildError::InvalidArgs { expected: arity, got: args.len() });
    }
    let built = match kind {
        StandardKind::Discrete(labels) => return Ok(FiniteIPoset::discrete(labels)?),
        StandardKind::LiftOmega => materialize(&Lifted::new(args[0].clone())).0,
        StandardKind::Product => materialize(&Product::new(args[0].clone(), args[1].clone())).0,
        StandardKind::Sum => materialize(&Sum::new(args[0].clone(), args[1].clone())).0,
        StandardKind::Powerset { base, exclude_empty } => {
            let mut p = Powerset::new(base);
            if !exclude_empty {
                p = p.including_empty();
            }
            relabel_powerset(&p)
        }
        StandardKind::Restrict(mask) => {
            if mask.len() != args[0].len() {
                return Err(BuildError::MaskLength { expected: args[0].len(), got: mask.len() });
            }
            let r = Restrict::checked(args[0].clone(), move |x: &super::Point| mask[x.0])?;
            materialize(&r).0
        }
    };
    Ok(built)
}

fn relabel_powerset(p: &Powerset<String>) -> FiniteIPoset {
    let (f, xs) = materialize(p);
    let labels = xs.iter().map(|s| format!("{{{}}}", s.iter().cloned().collect::<Vec<_>>().join(","))).collect();
    FiniteIPoset::from_relations_unchecked(
        labels,
        |a, b| f.le(&super::Point(a), &super::Point(b)),
        |a, b| f.identical(&super::Point(a), &super::Point(b)),
        Some(&|a, b| f.merge(&super::Point(a), &super::Point(b)).map(|m| m.0)),
    )
}
