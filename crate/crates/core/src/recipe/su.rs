use super::UpdateSpace;
use crate::iposet::{Enumerable, FiniteIPoset, IPoset, Point};
use crate::lens::Initiator;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

/// An element of `S ∪ (S × U)`: a proper state, or an update paired with
/// the state it was made against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuElement {
    Proper(usize),
    Pair(usize, usize),
}

/// The i-poset generated from an [`UpdateSpace`], merging with `⊕_{S,U}`.
#[derive(Clone, Debug)]
pub struct SuIPoset {
    space: Arc<UpdateSpace>,
    // ran[(s * |U| + u) * |S| + s'] iff s' ∈ Ran(s, u)
    ran: Arc<Vec<bool>>,
}

pub fn gen_iposet(us: &UpdateSpace) -> SuIPoset {
    let (ns, nu) = (us.n_states(), us.n_updates());
    let mut ran = alloc::vec![false; ns * nu * ns];
    for s in 0..ns {
        for u in 0..nu {
            for t in us.ran(s, u) {
                ran[(s * nu + u) * ns + t] = true;
            }
        }
    }
    SuIPoset { space: Arc::new(us.clone()), ran: Arc::new(ran) }
}

impl SuIPoset {
    pub fn space(&self) -> &UpdateSpace {
        &self.space
    }

    /// `s' ∈ Ran(s, u)`.
    pub fn in_ran(&self, s: usize, u: usize, s2: usize) -> bool {
        let (ns, nu) = (self.space.n_states(), self.space.n_updates());
        self.ran[(s * nu + u) * ns + s2]
    }
}

impl IPoset for SuIPoset {
    type Elem = SuElement;

    fn le(&self, a: &SuElement, b: &SuElement) -> bool {
        use SuElement::*;
        match (*a, *b) {
            (Proper(s), Proper(t)) => s == t,
            (Pair(s, u), Pair(t, u2)) => s == t && self.space.le_u(u, u2),
            (Pair(s, u), Proper(t)) => self.in_ran(s, u, t),
            (Proper(_), Pair(..)) => false,
        }
    }

    fn identical(&self, a: &SuElement, b: &SuElement) -> bool {
        use SuElement::*;
        match (*a, *b) {
            (Proper(s), Proper(t)) => s == t,
            (Pair(s, u), Pair(t, u2)) => s == t && self.space.le_u(u, u2),
            (Pair(s, u), Proper(t)) => s == t && self.space.interp(u, s) == Some(s),
            (Proper(_), Pair(..)) => false,
        }
    }

    fn merge(&self, a: &SuElement, b: &SuElement) -> Option<SuElement> {
        use SuElement::*;
        match (*a, *b) {
            (Proper(s), Proper(t)) => (s == t).then_some(Proper(s)),
            (Pair(s, u), Proper(t)) | (Proper(t), Pair(s, u)) => self.in_ran(s, u, t).then_some(Proper(t)),
            (Pair(s, u), Pair(t, u2)) if s == t => self.space.merge_u(u, u2).map(|m| Pair(s, m)),
            (Pair(..), Pair(..)) => None,
        }
    }

    fn has_merge(&self) -> bool {
        true
    }

    fn contains(&self, a: &SuElement) -> bool {
        let (ns, nu) = (self.space.n_states(), self.space.n_updates());
        match *a {
            SuElement::Proper(s) => s < ns,
            SuElement::Pair(s, u) => s < ns && u < nu,
        }
    }

    fn describe(&self, a: &SuElement) -> String {
        match *a {
            SuElement::Proper(s) => self.space.states()[s].clone(),
            SuElement::Pair(s, u) => format!("({}, {})", self.space.states()[s], self.space.updates()[u]),
        }
    }
}

impl Enumerable for SuIPoset {
    fn elements(&self) -> Vec<SuElement> {
        let (ns, nu) = (self.space.n_states(), self.space.n_updates());
        let propers = (0..ns).map(SuElement::Proper);
        let pairs = (0..ns).flat_map(move |s| (0..nu).map(move |u| SuElement::Pair(s, u)));
        propers.chain(pairs).collect()
    }
}

/// `Apply s _ = s` and `Apply (s, u) s' = ⟦u⟧(s)` when `s = s'`.
pub fn apply_su(us: &UpdateSpace, v: &SuElement, s: usize) -> Option<usize> {
    match *v {
        SuElement::Proper(t) => Some(t),
        SuElement::Pair(origin, u) if origin == s => us.interp(u, s),
        SuElement::Pair(..) => None,
    }
}

/// The proper states as a discrete i-poset, labelled as in the space.
pub fn states_iposet(us: &UpdateSpace) -> FiniteIPoset {
    FiniteIPoset::discrete(us.states().iter().cloned()).expect("update spaces have distinct, nonempty states")
}

/// The initiator from proper states into the generated i-poset.
pub fn initiator(p: &SuIPoset) -> Initiator<FiniteIPoset, SuIPoset> {
    let space = p.space.clone();
    Initiator::new(
        states_iposet(&space),
        p.clone(),
        |s: &Point| SuElement::Proper(s.0),
        move |v, s| apply_su(&space, v, s.0).map(Point),
    )
}
