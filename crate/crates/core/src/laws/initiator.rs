use super::Universe;
use crate::iposet::IPoset;
use crate::lens::{Initiator, Lens, SourceOf, ViewOf};

/// u-acceptability: `v ∈ I_s ⇒ apply(v, s) = s`, with `s` embedded in the
/// view domain. Returns the first `(s, v)` that breaks it.
pub fn check_u_acceptability<S: IPoset, P: IPoset>(
    init: &Initiator<S, P>,
    states: &[S::Elem],
    views: &[P::Elem],
) -> Result<(), (S::Elem, P::Elem)> {
    for s in states {
        let e = init.embed(s);
        for v in views {
            if init.view().identical(v, &e) && init.apply(v, s).as_ref() != Some(s) {
                return Err((s.clone(), v.clone()));
            }
        }
    }
    Ok(())
}

/// u-consistency: `apply(v, s) = s' ⇒ v ≤ s'`, with `s'` embedded in the view
/// domain. Returns the first `(s, v)` that breaks it.
pub fn check_u_consistency<S: IPoset, P: IPoset>(
    init: &Initiator<S, P>,
    states: &[S::Elem],
    views: &[P::Elem],
) -> Result<(), (S::Elem, P::Elem)> {
    for s in states {
        for v in views {
            if let Some(r) = init.apply(v, s) {
                if !init.view().le(v, &init.embed(&r)) {
                    return Err((s.clone(), v.clone()));
                }
            }
        }
    }
    Ok(())
}

/// PutPut, `put (s0, v1) = s1 ∧ put (s1, v2) = s2 ⇒ put (s0, v2) = s2`.
///
/// Informational only: no lens here is required to satisfy it. Returns the
/// first `(s0, v1, v2)` that breaks it.
#[allow(clippy::type_complexity)]
pub fn probe_put_put<L: Lens>(
    l: &L,
    universe: &Universe<SourceOf<L>, ViewOf<L>>,
) -> Option<(SourceOf<L>, ViewOf<L>, ViewOf<L>)> {
    for s0 in &universe.sources {
        for v1 in &universe.views {
            let Ok(s1) = l.put(s0, v1) else { continue };
            for v2 in &universe.views {
                if let Ok(s2) = l.put(&s1, v2) {
                    if l.put(s0, v2).as_ref() != Ok(&s2) {
                        return Some((s0.clone(), v1.clone(), v2.clone()));
                    }
                }
            }
        }
    }
    None
}
