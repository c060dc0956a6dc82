use super::{Lens, PutFailure, SourceOf, Stage, ViewOf};
use crate::iposet::Product;

/// Sequential composition `l1 ⨟ l2`.
///
/// `get = get2 ∘ get1` and `put (a, c') = put1 (a, put2 (get1 a, c'))`.
#[derive(Clone, Debug)]
pub struct Compose<L1, L2> {
    pub first: L1,
    pub second: L2,
}

pub fn compose<L1, L2>(first: L1, second: L2) -> Compose<L1, L2>
where
    L1: Lens,
    L2: Lens<Source = L1::View>,
{
    Compose { first, second }
}

impl<L1, L2> Lens for Compose<L1, L2>
where
    L1: Lens,
    L2: Lens<Source = L1::View>,
{
    type Source = L1::Source;
    type View = L2::View;

    fn source(&self) -> &Self::Source {
        self.first.source()
    }
    fn view(&self) -> &Self::View {
        self.second.view()
    }
    fn get(&self, s: &SourceOf<Self>) -> ViewOf<Self> {
        self.second.get(&self.first.get(s))
    }
    fn put(&self, s: &SourceOf<Self>, v: &ViewOf<Self>) -> Result<SourceOf<Self>, PutFailure> {
        let middle = self.second.put(&self.first.get(s), v).map_err(|e| e.within(Stage::Second))?;
        self.first.put(s, &middle).map_err(|e| e.within(Stage::First))
    }
}

/// Parallel product `l1 × l2`, acting component-wise on pairs.
#[derive(Clone, Debug)]
pub struct ProductLens<L1: Lens, L2: Lens> {
    pub left: L1,
    pub right: L2,
    source: Product<L1::Source, L2::Source>,
    view: Product<L1::View, L2::View>,
}

pub fn product_lens<L1, L2>(left: L1, right: L2) -> ProductLens<L1, L2>
where
    L1: Lens,
    L2: Lens,
    L1::Source: Clone,
    L2::Source: Clone,
    L1::View: Clone,
    L2::View: Clone,
{
    let source = Product::new(left.source().clone(), right.source().clone());
    let view = Product::new(left.view().clone(), right.view().clone());
    ProductLens { left, right, source, view }
}

impl<L1: Lens, L2: Lens> Lens for ProductLens<L1, L2> {
    type Source = Product<L1::Source, L2::Source>;
    type View = Product<L1::View, L2::View>;

    fn source(&self) -> &Self::Source {
        &self.source
    }
    fn view(&self) -> &Self::View {
        &self.view
    }
    fn get(&self, s: &SourceOf<Self>) -> ViewOf<Self> {
        (self.left.get(&s.0), self.right.get(&s.1))
    }
    fn put(&self, s: &SourceOf<Self>, v: &ViewOf<Self>) -> Result<SourceOf<Self>, PutFailure> {
        let l = self.left.put(&s.0, &v.0).map_err(|e| e.within(Stage::Left))?;
        let r = self.right.put(&s.1, &v.1).map_err(|e| e.within(Stage::Right))?;
        Ok((l, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iposet::{Discrete, Enumerable, FiniteIPoset, Lift, Lifted};
    use crate::lens::{constant_lens, dup_lens, identity_lens, FailureReason};
    use alloc::vec;

    #[test]
    fn identity_is_a_unit_of_composition() {
        let p = Lifted::new(Discrete::new(vec![1u8, 2]));
        let l = constant_lens(p.clone(), p.clone(), Lift::Elem(1)).unwrap();
        let left = compose(identity_lens(p.clone()), l.clone());
        let right = compose(l.clone(), identity_lens(p.clone()));
        for s in p.elements() {
            assert_eq!(left.get(&s), l.get(&s));
            assert_eq!(right.get(&s), l.get(&s));
            for v in p.elements() {
                assert_eq!(left.put(&s, &v).ok(), l.put(&s, &v).ok());
                assert_eq!(right.put(&s, &v).ok(), l.put(&s, &v).ok());
            }
        }
    }

    #[test]
    fn failures_carry_their_stage() {
        let p = Lifted::new(Discrete::new(vec![1u8, 2]));
        let bad_side = constant_lens(p.clone(), p.clone(), Lift::Elem(1)).unwrap();
        let prod = product_lens(identity_lens(p.clone()), bad_side);
        let err = prod.put(&(Lift::Omega, Lift::Omega), &(Lift::Elem(2), Lift::Elem(2))).unwrap_err();
        assert_eq!(err.reason, FailureReason::GuardFailed);
        assert_eq!(err.stage, [Stage::Right]);

        let chain = FiniteIPoset::chain(["0", "1"]).unwrap();
        let pipeline = compose(dup_lens(chain.clone()), product_lens(identity_lens(chain.clone()), constant_lens(chain.clone(), chain.clone(), chain.at("0")).unwrap()));
        let err = pipeline.put(&chain.at("0"), &(chain.at("1"), chain.at("1"))).unwrap_err();
        assert_eq!(err.stage, [Stage::Second, Stage::Right]);
    }

    #[test]
    fn product_of_identities_is_identity() {
        let p = Discrete::new(vec!['x', 'y']);
        let l = product_lens(identity_lens(p.clone()), identity_lens(p.clone()));
        for s in l.source().elements() {
            assert_eq!(l.get(&s), s);
            for v in l.view().elements() {
                assert_eq!(l.put(&s, &v), Ok(v));
            }
        }
    }
}
