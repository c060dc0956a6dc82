use super::{FailureReason, Lens, PutFailure, SourceOf, ViewOf};
use crate::iposet::{check_duplicable, Enumerable, IPoset, MissingMerge, NonMonotonePredicate, Product, Restrict, Sum, Tagged};
use crate::report::ValidationReport;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

/// `get s = s`, `put (_, v) = v`.
#[derive(Clone, Debug)]
pub struct IdLens<P> {
    domain: P,
}

pub fn identity_lens<P: IPoset>(p: P) -> IdLens<P> {
    IdLens { domain: p }
}

impl<P: IPoset> Lens for IdLens<P> {
    type Source = P;
    type View = P;
    fn source(&self) -> &P {
        &self.domain
    }
    fn view(&self) -> &P {
        &self.domain
    }
    fn get(&self, s: &P::Elem) -> P::Elem {
        s.clone()
    }
    fn put(&self, _: &P::Elem, v: &P::Elem) -> Result<P::Elem, PutFailure> {
        Ok(v.clone())
    }
}

/// The source domain of a constant lens has no least element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("the source domain of a constant lens needs a least element")]
pub struct NoLeastElement;

/// `get _ = a`; `put (_, v) = Ω` when `v ∈ I_a`, undefined otherwise.
///
/// Accepting every identical update of `a`, not just `a` itself, is what
/// keeps the lens lawful under composition.
#[derive(Clone, Debug)]
pub struct ConstLens<P: IPoset, Q: IPoset> {
    source: P,
    view: Q,
    value: Q::Elem,
    omega: P::Elem,
}

pub fn constant_lens<P: IPoset, Q: IPoset>(source: P, view: Q, value: Q::Elem) -> Result<ConstLens<P, Q>, NoLeastElement> {
    let omega = source.least().ok_or(NoLeastElement)?;
    Ok(ConstLens { source, view, value, omega })
}

impl<P: IPoset, Q: IPoset> ConstLens<P, Q> {
    pub fn value(&self) -> &Q::Elem {
        &self.value
    }
}

impl<P: IPoset, Q: IPoset> Lens for ConstLens<P, Q> {
    type Source = P;
    type View = Q;
    fn source(&self) -> &P {
        &self.source
    }
    fn view(&self) -> &Q {
        &self.view
    }
    fn get(&self, _: &P::Elem) -> Q::Elem {
        self.value.clone()
    }
    fn put(&self, _: &P::Elem, v: &Q::Elem) -> Result<P::Elem, PutFailure> {
        if self.view.identical(v, &self.value) {
            Ok(self.omega.clone())
        } else {
            Err(PutFailure::new(
                FailureReason::GuardFailed,
                format!("{} is not an identical update of {}", self.view.describe(v), self.view.describe(&self.value)),
            ))
        }
    }
}

/// `get s = (s, s)`; `put (_, (v1, v2)) = v1 ⊕ v2`.
#[derive(Clone, Debug)]
pub struct DupLens<P> {
    source: P,
    view: Product<P, P>,
}

/// Duplication over a domain whose merge is trusted to be duplicable.
pub fn dup_lens<P: IPoset + Clone>(p: P) -> DupLens<P> {
    DupLens { view: Product::new(p.clone(), p.clone()), source: p }
}

/// Why [`dup_lens_checked`] refused a domain.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum DupError {
    #[error(transparent)]
    MissingMerge(#[from] MissingMerge),
    #[error("domain is not duplicable:\n{0}")]
    NotDuplicable(ValidationReport),
}

/// Duplication over a finite domain, after checking duplicability.
pub fn dup_lens_checked<P: Enumerable + Clone>(p: P) -> Result<DupLens<P>, DupError> {
    let report = check_duplicable(&p)?;
    if report.is_ok() {
        Ok(dup_lens(p))
    } else {
        Err(DupError::NotDuplicable(report))
    }
}

impl<P: IPoset> Lens for DupLens<P> {
    type Source = P;
    type View = Product<P, P>;
    fn source(&self) -> &P {
        &self.source
    }
    fn view(&self) -> &Product<P, P> {
        &self.view
    }
    fn get(&self, s: &P::Elem) -> (P::Elem, P::Elem) {
        (s.clone(), s.clone())
    }
    fn put(&self, _: &P::Elem, v: &(P::Elem, P::Elem)) -> Result<P::Elem, PutFailure> {
        self.source.merge(&v.0, &v.1).ok_or_else(|| {
            PutFailure::new(
                FailureReason::MergeConflict,
                format!("{} and {} have no merge", self.source.describe(&v.0), self.source.describe(&v.1)),
            )
        })
    }
}

/// Strips the tag on `get`; `put` keeps the tag of the source.
#[derive(Clone, Debug)]
pub struct UntagS<P> {
    source: Sum<P, P>,
}

pub fn untag_s<P: IPoset + Clone>(p: P) -> UntagS<P> {
    UntagS { source: Sum::new(p.clone(), p) }
}

impl<P: IPoset> Lens for UntagS<P> {
    type Source = Sum<P, P>;
    type View = P;
    fn source(&self) -> &Sum<P, P> {
        &self.source
    }
    fn view(&self) -> &P {
        &self.source.left
    }
    fn get(&self, s: &Tagged<P::Elem, P::Elem>) -> P::Elem {
        match s {
            Tagged::InL(x) | Tagged::InR(x) => x.clone(),
        }
    }
    fn put(&self, s: &Tagged<P::Elem, P::Elem>, v: &P::Elem) -> Result<Tagged<P::Elem, P::Elem>, PutFailure> {
        Ok(match s {
            Tagged::InL(_) => Tagged::InL(v.clone()),
            Tagged::InR(_) => Tagged::InR(v.clone()),
        })
    }
}

/// Like [`UntagS`], but `put` may switch tags when only the other side's
/// predicate accepts the new view.
#[derive(Clone)]
pub struct Untag<P: IPoset> {
    source: Sum<Restrict<P>, Restrict<P>>,
}

impl<P: IPoset + fmt::Debug> fmt::Debug for Untag<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Untag").field("domain", &self.source.left.inner).finish_non_exhaustive()
    }
}

/// Untagging over `P_φ1 + P_φ2`, trusting both predicates to be monotone.
pub fn untag_pred<P: IPoset + Clone>(
    p: P,
    phi1: impl Fn(&P::Elem) -> bool + Send + Sync + 'static,
    phi2: impl Fn(&P::Elem) -> bool + Send + Sync + 'static,
) -> Untag<P> {
    Untag { source: Sum::new(Restrict::new(p.clone(), phi1), Restrict::new(p, phi2)) }
}

/// Untagging over a finite domain, after checking both predicates.
pub fn untag_pred_checked<P: Enumerable + Clone>(
    p: P,
    phi1: impl Fn(&P::Elem) -> bool + Send + Sync + 'static,
    phi2: impl Fn(&P::Elem) -> bool + Send + Sync + 'static,
) -> Result<Untag<P>, NonMonotonePredicate> {
    let left = Restrict::checked(p.clone(), phi1)?;
    let right = Restrict::checked(p, phi2)?;
    Ok(Untag { source: Sum::new(left, right) })
}

impl<P: IPoset> Lens for Untag<P> {
    type Source = Sum<Restrict<P>, Restrict<P>>;
    type View = P;
    fn source(&self) -> &Self::Source {
        &self.source
    }
    fn view(&self) -> &P {
        &self.source.left.inner
    }
    fn get(&self, s: &Tagged<P::Elem, P::Elem>) -> P::Elem {
        match s {
            Tagged::InL(x) | Tagged::InR(x) => x.clone(),
        }
    }
    fn put(&self, s: &Tagged<P::Elem, P::Elem>, v: &P::Elem) -> Result<Tagged<P::Elem, P::Elem>, PutFailure> {
        let (l, r) = (self.source.left.holds(v), self.source.right.holds(v));
        let from_left = matches!(s, Tagged::InL(_));
        if (from_left && l) || (!from_left && l && !r) {
            Ok(Tagged::InL(v.clone()))
        } else if (!from_left && r) || (from_left && r && !l) {
            Ok(Tagged::InR(v.clone()))
        } else {
            Err(PutFailure::new(
                FailureReason::GuardFailed,
                format!("{} satisfies neither predicate", self.view().describe(v)),
            ))
        }
    }
}

type Embed<S, P> = Arc<dyn Fn(&<S as IPoset>::Elem) -> <P as IPoset>::Elem + Send + Sync>;
type Apply<S, P> = Arc<dyn Fn(&<P as IPoset>::Elem, &<S as IPoset>::Elem) -> Option<<S as IPoset>::Elem> + Send + Sync>;

/// A ps-initiator: `get` embeds a proper state into a partially-specified
/// domain, and `put (s, v) = apply(v, s)` applies `v` as an update.
///
/// The source domain is expected to be discrete. Lawfulness reduces to the
/// u-acceptability and u-consistency of `apply`, which
/// [`crate::laws::check_u_acceptability`] and
/// [`crate::laws::check_u_consistency`] check.
pub struct Initiator<S: IPoset, P: IPoset> {
    source: S,
    view: P,
    embed: Embed<S, P>,
    apply: Apply<S, P>,
}

impl<S: IPoset + Clone, P: IPoset + Clone> Clone for Initiator<S, P> {
    fn clone(&self) -> Self {
        Initiator { source: self.source.clone(), view: self.view.clone(), embed: self.embed.clone(), apply: self.apply.clone() }
    }
}

impl<S: IPoset, P: IPoset> fmt::Debug for Initiator<S, P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Initiator")
    }
}

impl<S: IPoset, P: IPoset> Initiator<S, P> {
    pub fn new(
        source: S,
        view: P,
        embed: impl Fn(&S::Elem) -> P::Elem + Send + Sync + 'static,
        apply: impl Fn(&P::Elem, &S::Elem) -> Option<S::Elem> + Send + Sync + 'static,
    ) -> Self {
        Initiator { source, view, embed: Arc::new(embed), apply: Arc::new(apply) }
    }

    pub fn embed(&self, s: &S::Elem) -> P::Elem {
        (self.embed)(s)
    }

    pub fn apply(&self, v: &P::Elem, s: &S::Elem) -> Option<S::Elem> {
        (self.apply)(v, s)
    }
}

impl<S: IPoset, P: IPoset> Lens for Initiator<S, P> {
    type Source = S;
    type View = P;
    fn source(&self) -> &S {
        &self.source
    }
    fn view(&self) -> &P {
        &self.view
    }
    fn get(&self, s: &S::Elem) -> P::Elem {
        self.embed(s)
    }
    fn put(&self, s: &S::Elem, v: &P::Elem) -> Result<S::Elem, PutFailure> {
        self.apply(v, s).ok_or_else(|| {
            PutFailure::new(
                FailureReason::OutOfDomain,
                format!("{} cannot be applied to {}", self.view.describe(v), self.source.describe(s)),
            )
        })
    }
}

type GetFn<P, Q> = Arc<dyn Fn(&<P as IPoset>::Elem) -> <Q as IPoset>::Elem + Send + Sync>;
type PutFn<P, Q> =
    Arc<dyn Fn(&<P as IPoset>::Elem, &<Q as IPoset>::Elem) -> Option<<P as IPoset>::Elem> + Send + Sync>;

/// A lens given directly by its two functions, for fixtures and
/// counterexamples. An undefined `put` is reported as a failed guard.
pub struct FnLens<P: IPoset, Q: IPoset> {
    name: String,
    source: P,
    view: Q,
    get: GetFn<P, Q>,
    put: PutFn<P, Q>,
}

impl<P: IPoset + Clone, Q: IPoset + Clone> Clone for FnLens<P, Q> {
    fn clone(&self) -> Self {
        FnLens {
            name: self.name.clone(),
            source: self.source.clone(),
            view: self.view.clone(),
            get: self.get.clone(),
            put: self.put.clone(),
        }
    }
}

impl<P: IPoset, Q: IPoset> fmt::Debug for FnLens<P, Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FnLens({})", self.name)
    }
}

impl<P: IPoset, Q: IPoset> FnLens<P, Q> {
    pub fn new(
        name: impl Into<String>,
        source: P,
        view: Q,
        get: impl Fn(&P::Elem) -> Q::Elem + Send + Sync + 'static,
        put: impl Fn(&P::Elem, &Q::Elem) -> Option<P::Elem> + Send + Sync + 'static,
    ) -> Self {
        FnLens { name: name.into(), source, view, get: Arc::new(get), put: Arc::new(put) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl<P: IPoset, Q: IPoset> Lens for FnLens<P, Q> {
    type Source = P;
    type View = Q;
    fn source(&self) -> &P {
        &self.source
    }
    fn view(&self) -> &Q {
        &self.view
    }
    fn get(&self, s: &SourceOf<Self>) -> ViewOf<Self> {
        (self.get)(s)
    }
    fn put(&self, s: &SourceOf<Self>, v: &ViewOf<Self>) -> Result<SourceOf<Self>, PutFailure> {
        (self.put)(s, v).ok_or_else(|| {
            PutFailure::new(
                FailureReason::GuardFailed,
                format!("{}: put({}, {}) is undefined", self.name, self.source.describe(s), self.view.describe(v)),
            )
        })
    }
}
