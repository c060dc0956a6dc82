//! The closure suite: the primitive lenses over every small finite i-poset,
//! their pairwise compositions and products, and duplication followed by a
//! product, each checked exhaustively.
//!
//! Every lens is checked for well-behavedness together with the properties
//! derived from it, so one pass answers both "is the family closed" and "do
//! the lemmas hold on it".

use super::fixtures::{tabulate, FiniteLens};
use super::{check_laws, LawId, Universe};
use crate::iposet::{all_posets, check_duplicable, identity_variants, Enumerable, FiniteIPoset, IPoset};
use crate::lens::{compose, constant_lens, dup_lens, identity_lens, product_lens, untag_s, Lens};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// The laws checked for every lens of the suite.
pub const CLOSURE_LAWS: [LawId; 6] =
    [LawId::WeakWb, LawId::Wb, LawId::GetMonotone, LawId::ViewStability, LawId::Stability, LawId::PutDeterminesGet];

/// One carrier of the suite.
#[derive(Clone, Debug)]
pub struct ClosureDomain {
    /// `n<size>.<order>.<identity>`, indices into the generated lists.
    pub name: String,
    pub poset: FiniteIPoset,
    /// Whether the join merge of `poset` is duplicable, so `dup` applies.
    pub duplicable: bool,
}

/// The verdicts for one lens of the suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureOutcome {
    pub domain: String,
    pub lens: String,
    pub sources: usize,
    pub views: usize,
    /// One entry per law of [`CLOSURE_LAWS`], in that order.
    pub holds: Vec<(LawId, bool)>,
    /// The rendered first failure, if any.
    pub failure: Option<String>,
}

impl ClosureOutcome {
    pub fn law(&self, law: LawId) -> bool {
        self.holds.iter().find(|(l, _)| *l == law).is_some_and(|(_, h)| *h)
    }

    /// The implications between the laws that the derived lemmas promise:
    /// weak well-behavedness gives monotone `get` and view stability, and
    /// well-behavedness adds stability and `get s = max V_s`.
    pub fn lemmas_hold(&self) -> bool {
        let weak = !self.law(LawId::WeakWb) || (self.law(LawId::GetMonotone) && self.law(LawId::ViewStability));
        let full = !self.law(LawId::Wb) || (self.law(LawId::Stability) && self.law(LawId::PutDeterminesGet));
        weak && full
    }
}

/// The carriers of every size up to `max_size`, one order per isomorphism
/// class. Sizes up to `all_identities_up_to` use every identical-update
/// relation; larger ones use `I = ≤` and the least relation allowed.
pub fn closure_domains(max_size: usize, all_identities_up_to: usize) -> Vec<ClosureDomain> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        for (k, p) in all_posets(n).into_iter().enumerate() {
            let variants = if n <= all_identities_up_to { identity_variants(&p) } else { extreme_identities(&p) };
            for (j, v) in variants.into_iter().enumerate() {
                let joined = v.with_join_merge();
                let duplicable = check_duplicable(&joined).is_ok_and(|r| r.is_ok());
                out.push(ClosureDomain { name: format!("n{n}.{k}.{j}"), poset: joined, duplicable });
            }
        }
    }
    out
}

fn extreme_identities(p: &FiniteIPoset) -> Vec<FiniteIPoset> {
    let least = p.least();
    let minimal = p
        .with_identical(|a, b| a == b || (Some(a) == least && p.le(&a, &b)))
        .expect("the forced pairs form a valid relation");
    if minimal.identical_pairs().count() == p.identical_pairs().count() {
        alloc::vec![p.clone()]
    } else {
        alloc::vec![p.clone(), minimal]
    }
}

/// Checks every lens of the suite built over `d`.
pub fn check_domain(d: &ClosureDomain) -> Vec<ClosureOutcome> {
    let p = &d.poset;
    let mut run = Runner { domain: &d.name, out: Vec::new() };

    // Lenses whose view is `p`, and lenses whose source is `p`.
    let mut into_p: Vec<FiniteLens> = alloc::vec![tabulate("id", &identity_lens(p.clone()))];
    let mut consts = Vec::new();
    if p.least().is_some() {
        for a in p.points() {
            let name = format!("const[{}]", p.label(a));
            consts.push(tabulate(&name, &constant_lens(p.clone(), p.clone(), a).expect("p has a least element")));
        }
    }
    into_p.extend(consts.iter().cloned());
    let mut from_p = into_p.clone();
    let untag = untag_s(p.clone());
    into_p.push(tabulate("untag_s", &untag));
    let dup = d.duplicable.then(|| dup_lens(p.clone()));
    if let Some(dup) = &dup {
        from_p.push(tabulate("dup", dup));
    }

    let mut singles: Vec<FiniteLens> = into_p.clone();
    singles.extend(from_p.iter().filter(|l| l.name() == "dup").cloned());
    for l in &singles {
        run.check(String::from(l.name()), l);
    }
    for l1 in &into_p {
        for l2 in &from_p {
            run.check(format!("{} ; {}", l1.name(), l2.name()), &compose(l1, l2));
        }
    }
    for l1 in &singles {
        for l2 in &singles {
            run.check(format!("{} * {}", l1.name(), l2.name()), &product_lens(l1, l2));
        }
    }
    if let Some(dup) = &dup {
        let halves: Vec<&FiniteLens> = from_p.iter().filter(|l| l.name() != "dup").collect();
        for l1 in &halves {
            for l2 in &halves {
                run.check(format!("dup ; ({} * {})", l1.name(), l2.name()), &compose(dup, product_lens(*l1, *l2)));
            }
        }
    }
    run.out
}

struct Runner<'a> {
    domain: &'a str,
    out: Vec<ClosureOutcome>,
}

impl Runner<'_> {
    fn check<L>(&mut self, name: String, l: &L)
    where
        L: Lens,
        L::Source: Enumerable,
        L::View: Enumerable,
    {
        let universe = Universe::exhaustive(l);
        let reports = check_laws(l, &CLOSURE_LAWS, &universe).expect("exhaustive universes lie inside the domains");
        let failure = reports.iter().find(|r| !r.holds()).map(|r| r.render(l));
        self.out.push(ClosureOutcome {
            domain: String::from(self.domain),
            lens: name,
            sources: universe.sources.len(),
            views: universe.views.len(),
            holds: reports.iter().map(|r| (r.law, r.holds())).collect(),
            failure,
        });
    }
}
