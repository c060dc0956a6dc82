//! Exhaustive law checking.
//!
//! [`check_law`] evaluates one law's quantified formula over a finite
//! [`Universe`]: either the whole carrier of finite domains, or caller-chosen
//! samples of infinite ones. Results of `put` that fall outside the universe
//! are still computed and compared; only the quantified variables range over
//! the universe.
//!
//! Every failing [`LawReport`] carries a [`Witness`] that
//! [`LawReport::recheck`] re-substitutes into the formula by calling the lens
//! directly, independently of the tabulated evaluation that found it.

mod engine;
pub mod closure;
pub mod fixtures;
mod initiator;

pub use initiator::{check_u_acceptability, check_u_consistency, probe_put_put};

use crate::iposet::{Enumerable, IPoset};
use crate::lens::{compose, Lens, SourceOf, ViewOf};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// The laws and derived properties the harness can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LawId {
    /// `put (s, v') = s' ⇒ get s' = v'`.
    ClassicalConsistency,
    /// `put (s, get s) = s`.
    ClassicalAcceptability,
    /// `put (s0, v) = s ⇒ put (s, get s) = s`.
    Stability,
    /// `put (s, v') ≤ s' ⇒ v' ≤ get s'`.
    PsConsistency,
    /// `v ∈ I_{get s} ⇒ put (s, v) ∈ I_s` (in particular defined).
    PsAcceptability,
    /// `put (s0, v) = s ≤ s'`, `v ≤ v'' ∈ I_{get s'}`, `put (s', v'') = s''`
    /// together imply `s ≤ s''`.
    PsStability,
    /// ps-consistency and ps-acceptability.
    WeakWb,
    /// weak well-behavedness and ps-stability.
    Wb,
    /// `s ≤ s' ⇒ get s ≤ get s'`.
    GetMonotone,
    /// `get (put (s, get s)) = get s`.
    ViewStability,
    /// `get s = max V_s` with `V_s = {v | ∃ s0, s1. put (s0, v) = s1 ≤ s}`.
    PutDeterminesGet,
    /// `put (s0, v) = s ⇒ put (s0, get s) = s`.
    WPutGet,
}

impl LawId {
    pub const ALL: [LawId; 12] = [
        LawId::ClassicalConsistency,
        LawId::ClassicalAcceptability,
        LawId::Stability,
        LawId::PsConsistency,
        LawId::PsAcceptability,
        LawId::PsStability,
        LawId::WeakWb,
        LawId::Wb,
        LawId::GetMonotone,
        LawId::ViewStability,
        LawId::PutDeterminesGet,
        LawId::WPutGet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LawId::ClassicalConsistency => "classical-consistency",
            LawId::ClassicalAcceptability => "classical-acceptability",
            LawId::Stability => "stability",
            LawId::PsConsistency => "ps-consistency",
            LawId::PsAcceptability => "ps-acceptability",
            LawId::PsStability => "ps-stability",
            LawId::WeakWb => "weak-wb",
            LawId::Wb => "wb",
            LawId::GetMonotone => "get-monotone",
            LawId::ViewStability => "view-stability",
            LawId::PutDeterminesGet => "put-determines-get",
            LawId::WPutGet => "wputget",
        }
    }

    /// The basic laws a composite law is the conjunction of, in checking order.
    pub fn components(self) -> &'static [LawId] {
        match self {
            LawId::WeakWb => &[LawId::PsAcceptability, LawId::PsConsistency],
            LawId::Wb => &[LawId::PsAcceptability, LawId::PsConsistency, LawId::PsStability],
            LawId::ClassicalConsistency => &[LawId::ClassicalConsistency],
            LawId::ClassicalAcceptability => &[LawId::ClassicalAcceptability],
            LawId::Stability => &[LawId::Stability],
            LawId::PsConsistency => &[LawId::PsConsistency],
            LawId::PsAcceptability => &[LawId::PsAcceptability],
            LawId::PsStability => &[LawId::PsStability],
            LawId::GetMonotone => &[LawId::GetMonotone],
            LawId::ViewStability => &[LawId::ViewStability],
            LawId::PutDeterminesGet => &[LawId::PutDeterminesGet],
            LawId::WPutGet => &[LawId::WPutGet],
        }
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown law `{0}`")]
pub struct UnknownLaw(pub String);

impl FromStr for LawId {
    type Err = UnknownLaw;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LawId::ALL.into_iter().find(|l| l.name() == s).ok_or_else(|| UnknownLaw(s.into()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniverseKind {
    /// The whole carrier of finite domains.
    Exhaustive,
    /// Caller-chosen samples; a passing verdict is evidence, not proof.
    Sampled,
}

impl fmt::Display for UniverseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UniverseKind::Exhaustive => "exhaustive",
            UniverseKind::Sampled => "sampled",
        })
    }
}

/// The finite sets the quantified source and view variables range over.
#[derive(Clone, Debug, PartialEq)]
pub struct Universe<S, V> {
    pub sources: Vec<S>,
    pub views: Vec<V>,
    pub kind: UniverseKind,
}

impl<S, V> Universe<S, V> {
    pub fn sampled(sources: Vec<S>, views: Vec<V>) -> Self {
        Universe { sources, views, kind: UniverseKind::Sampled }
    }

    pub fn summary(&self) -> UniverseSummary {
        UniverseSummary { kind: self.kind, sources: self.sources.len(), views: self.views.len() }
    }
}

impl<S, V> Universe<S, V> {
    /// The full carriers of a lens over finite domains.
    pub fn exhaustive<L>(l: &L) -> Self
    where
        L: Lens,
        L::Source: Enumerable<Elem = S>,
        L::View: Enumerable<Elem = V>,
    {
        Universe { sources: l.source().elements(), views: l.view().elements(), kind: UniverseKind::Exhaustive }
    }
}

/// What a report quantified over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniverseSummary {
    pub kind: UniverseKind,
    pub sources: usize,
    pub views: usize,
}

impl fmt::Display for UniverseSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} sources x {} views", self.kind, self.sources, self.views)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("sample source {0} is outside the source domain")]
    SourceOutsideDomain(String),
    #[error("sample view {0} is outside the view domain")]
    ViewOutsideDomain(String),
}

/// The quantified variables of a violated law, plus the values computed
/// from them when the violation was found. `None` stands for an undefined
/// `put`.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness<S, V> {
    ClassicalConsistency { s: S, v: V, put: S },
    ClassicalAcceptability { s: S, put: Option<S> },
    Stability { s0: S, v: V, s: S, put: Option<S> },
    PsConsistency { s: S, v: V, put: S, s_prime: S },
    PsAcceptability { s: S, v: V, put: Option<S> },
    PsStability { s0: S, v: V, s: S, s_prime: S, v2: V, s2: S },
    GetMonotone { s: S, s_prime: S },
    ViewStability { s: S, put: Option<S> },
    PutDeterminesGet { s: S, max: Option<V> },
    WPutGet { s0: S, v: V, s: S, put: Option<S> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

/// The outcome of checking one law over one universe.
#[derive(Clone, Debug, PartialEq)]
pub struct LawReport<S, V> {
    pub law: LawId,
    pub verdict: Verdict,
    pub counterexample: Option<Witness<S, V>>,
    pub universe: UniverseSummary,
}

impl<S, V> LawReport<S, V> {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

impl<S: Clone + PartialEq + fmt::Debug, V: Clone + PartialEq + fmt::Debug> LawReport<S, V> {
    /// Re-evaluates the law at the counterexample by calling the lens
    /// directly. True iff the report holds, or its witness really violates
    /// the law.
    pub fn recheck<L>(&self, l: &L, universe: &Universe<S, V>) -> bool
    where
        L: Lens,
        L::Source: IPoset<Elem = S>,
        L::View: IPoset<Elem = V>,
    {
        match (&self.verdict, &self.counterexample) {
            (Verdict::Holds, None) => true,
            (Verdict::Fails, Some(w)) => violates(l, w, universe),
            _ => false,
        }
    }

    /// Multi-line text rendering with elements described by the lens's domains.
    pub fn render<L>(&self, l: &L) -> String
    where
        L: Lens,
        L::Source: IPoset<Elem = S>,
        L::View: IPoset<Elem = V>,
    {
        let verdict = match self.verdict {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
        };
        let mut out = format!("{}: {} ({})", self.law, verdict, self.universe);
        if let Some(w) = &self.counterexample {
            out.push_str("\n  witness: ");
            out.push_str(&render_witness(l, w));
        }
        out
    }
}

/// Checks one law of `l` over `universe`.
pub fn check_law<L: Lens>(
    l: &L,
    law: LawId,
    universe: &Universe<SourceOf<L>, ViewOf<L>>,
) -> Result<LawReport<SourceOf<L>, ViewOf<L>>, HarnessError> {
    let mut reports = check_laws(l, &[law], universe)?;
    Ok(reports.remove(0))
}

/// Checks several laws of `l`, sharing the tabulated `get` and `put`.
pub fn check_laws<L: Lens>(
    l: &L,
    laws: &[LawId],
    universe: &Universe<SourceOf<L>, ViewOf<L>>,
) -> Result<Vec<LawReport<SourceOf<L>, ViewOf<L>>>, HarnessError> {
    if let Some(s) = universe.sources.iter().find(|s| !l.source().contains(s)) {
        return Err(HarnessError::SourceOutsideDomain(l.source().describe(s)));
    }
    if let Some(v) = universe.views.iter().find(|v| !l.view().contains(v)) {
        return Err(HarnessError::ViewOutsideDomain(l.view().describe(v)));
    }
    let mut engine = engine::Engine::new(l, universe);
    let summary = universe.summary();
    Ok(laws
        .iter()
        .map(|&law| {
            let counterexample = law.components().iter().find_map(|&basic| engine.find(basic));
            LawReport {
                law,
                verdict: if counterexample.is_some() { Verdict::Fails } else { Verdict::Holds },
                counterexample,
                universe: summary,
            }
        })
        .collect())
}

/// Checks that `l1 ⨟ l2` is well-behaved over `universe`. With lawful
/// inputs a failure points at a combinator or harness bug.
pub fn check_composition_closure<L1, L2>(
    l1: &L1,
    l2: &L2,
    universe: &Universe<SourceOf<L1>, ViewOf<L2>>,
) -> Result<LawReport<SourceOf<L1>, ViewOf<L2>>, HarnessError>
where
    L1: Lens,
    L2: Lens<Source = L1::View>,
{
    check_law(&compose(l1, l2), LawId::Wb, universe)
}

fn violates<L: Lens>(l: &L, w: &Witness<SourceOf<L>, ViewOf<L>>, universe: &Universe<SourceOf<L>, ViewOf<L>>) -> bool {
    let (sp, vp) = (l.source(), l.view());
    let put = |s: &SourceOf<L>, v: &ViewOf<L>| l.put(s, v).ok();
    match w {
        Witness::ClassicalConsistency { s, v, .. } => put(s, v).is_some_and(|p| l.get(&p) != *v),
        Witness::ClassicalAcceptability { s, .. } => put(s, &l.get(s)).as_ref() != Some(s),
        Witness::Stability { s0, v, .. } => put(s0, v).is_some_and(|s| put(&s, &l.get(&s)) != Some(s)),
        Witness::PsConsistency { s, v, s_prime, .. } => {
            put(s, v).is_some_and(|p| sp.le(&p, s_prime) && !vp.le(v, &l.get(s_prime)))
        }
        Witness::PsAcceptability { s, v, .. } => {
            vp.identical(v, &l.get(s)) && !put(s, v).is_some_and(|p| sp.identical(&p, s))
        }
        Witness::PsStability { s0, v, s_prime, v2, .. } => put(s0, v).is_some_and(|s| {
            sp.le(&s, s_prime)
                && vp.le(v, v2)
                && vp.identical(v2, &l.get(s_prime))
                && put(s_prime, v2).is_some_and(|s2| !sp.le(&s, &s2))
        }),
        Witness::GetMonotone { s, s_prime } => sp.le(s, s_prime) && !vp.le(&l.get(s), &l.get(s_prime)),
        Witness::ViewStability { s, .. } => {
            let g = l.get(s);
            !put(s, &g).is_some_and(|p| l.get(&p) == g)
        }
        Witness::PutDeterminesGet { s, .. } => {
            let vs: Vec<&ViewOf<L>> = universe
                .views
                .iter()
                .filter(|v| universe.sources.iter().any(|s0| put(s0, v).is_some_and(|s1| sp.le(&s1, s))))
                .collect();
            let max = vs.iter().find(|m| vs.iter().all(|v| vp.le(v, m)));
            max.is_none_or(|m| **m != l.get(s))
        }
        Witness::WPutGet { s0, v, .. } => put(s0, v).is_some_and(|s| put(s0, &l.get(&s)) != Some(s)),
    }
}

fn render_witness<L: Lens>(l: &L, w: &Witness<SourceOf<L>, ViewOf<L>>) -> String {
    let s = |x: &SourceOf<L>| l.source().describe(x);
    let v = |x: &ViewOf<L>| l.view().describe(x);
    let os = |x: &Option<SourceOf<L>>| x.as_ref().map_or_else(|| String::from("undefined"), s);
    match w {
        Witness::ClassicalConsistency { s: a, v: b, put } => {
            format!("s = {}, v = {}, put(s, v) = {}, get(put(s, v)) = {}", s(a), v(b), s(put), v(&l.get(put)))
        }
        Witness::ClassicalAcceptability { s: a, put } => format!("s = {}, put(s, get s) = {}", s(a), os(put)),
        Witness::Stability { s0, v: b, s: a, put } => {
            format!("s0 = {}, v = {}, s = {}, put(s, get s) = {}", s(s0), v(b), s(a), os(put))
        }
        Witness::PsConsistency { s: a, v: b, put, s_prime } => format!(
            "s = {}, v = {}, put(s, v) = {}, s' = {}, get s' = {}",
            s(a),
            v(b),
            s(put),
            s(s_prime),
            v(&l.get(s_prime))
        ),
        Witness::PsAcceptability { s: a, v: b, put } => {
            format!("s = {}, v = {}, put(s, v) = {}", s(a), v(b), os(put))
        }
        Witness::PsStability { s0, v: b, s: a, s_prime, v2, s2 } => format!(
            "s0 = {}, v = {}, s = {}, s' = {}, v'' = {}, s'' = {}",
            s(s0),
            v(b),
            s(a),
            s(s_prime),
            v(v2),
            s(s2)
        ),
        Witness::GetMonotone { s: a, s_prime } => format!(
            "s = {}, s' = {}, get s = {}, get s' = {}",
            s(a),
            s(s_prime),
            v(&l.get(a)),
            v(&l.get(s_prime))
        ),
        Witness::ViewStability { s: a, put } => format!("s = {}, put(s, get s) = {}", s(a), os(put)),
        Witness::PutDeterminesGet { s: a, max } => format!(
            "s = {}, get s = {}, max V_s = {}",
            s(a),
            v(&l.get(a)),
            max.as_ref().map_or_else(|| String::from("none"), v)
        ),
        Witness::WPutGet { s0, v: b, s: a, put } => {
            format!("s0 = {}, v = {}, s = {}, put(s0, get s) = {}", s(s0), v(b), s(a), os(put))
        }
    }
}
