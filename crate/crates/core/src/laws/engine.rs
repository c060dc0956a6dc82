//! Tabulated evaluation of the laws.
//!
//! Elements are interned into index spaces whose `≤` and `I` rows are kept as
//! bitsets, and `get`/`put` are tabulated over the universe once. Values that
//! `put` produces outside the universe are interned on the fly so they can
//! still be compared.

use super::{LawId, Universe, Witness};
use crate::iposet::IPoset;
use crate::lens::{Lens, SourceOf, ViewOf};
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Default)]
struct Bits(Vec<u64>);

impl Bits {
    fn set(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.0.len() {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    fn or_with(&mut self, other: &Bits) {
        if other.0.len() > self.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    /// Indices below `limit` set in both `self` and `other`.
    fn common_below<'a>(&'a self, other: &'a Bits, limit: usize) -> impl Iterator<Item = usize> + 'a {
        let words = self.0.len().min(other.0.len()).min(limit.div_ceil(64));
        (0..words).flat_map(move |w| {
            let mut word = self.0[w] & other.0[w];
            core::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + bit)
            })
        })
        .take_while(move |&i| i < limit)
    }

    fn ones_below(&self, limit: usize) -> impl Iterator<Item = usize> + '_ {
        self.common_below(self, limit)
    }
}

/// Interned elements of one domain, with `up[a] = {b | a ≤ b}` and
/// `ids[b] = {a | a ∈ I_b}`. Indices below `n` are the universe.
struct Space<'p, P: IPoset> {
    p: &'p P,
    elems: Vec<P::Elem>,
    n: usize,
    up: Vec<Bits>,
    ids: Vec<Bits>,
}

impl<'p, P: IPoset> Space<'p, P> {
    fn new(p: &'p P, universe: &[P::Elem]) -> Self {
        let mut s = Space { p, elems: Vec::new(), n: 0, up: Vec::new(), ids: Vec::new() };
        for e in universe {
            s.intern(e);
        }
        s.n = s.elems.len();
        s
    }

    fn intern(&mut self, e: &P::Elem) -> usize {
        if let Some(i) = self.elems.iter().position(|x| x == e) {
            return i;
        }
        let k = self.elems.len();
        let (mut up, mut ids) = (Bits::default(), Bits::default());
        for (j, x) in self.elems.iter().enumerate() {
            if self.p.le(x, e) {
                self.up[j].set(k);
            }
            if self.p.le(e, x) {
                up.set(j);
            }
            if self.p.identical(x, e) {
                ids.set(j);
            }
            if self.p.identical(e, x) {
                self.ids[j].set(k);
            }
        }
        if self.p.le(e, e) {
            up.set(k);
        }
        if self.p.identical(e, e) {
            ids.set(k);
        }
        self.elems.push(e.clone());
        self.up.push(up);
        self.ids.push(ids);
        k
    }

    fn le(&self, a: usize, b: usize) -> bool {
        self.up[a].get(b)
    }

    fn identical(&self, a: usize, b: usize) -> bool {
        self.ids[b].get(a)
    }
}

const UNKNOWN: u32 = u32::MAX;
const UNDEFINED: u32 = u32::MAX - 1;

pub(super) struct Engine<'a, L: Lens> {
    lens: &'a L,
    src: Space<'a, L::Source>,
    view: Space<'a, L::View>,
    gets: Vec<u32>,
    puts: Vec<u32>,
    extra_puts: BTreeMap<(usize, usize), Option<usize>>,
}

impl<'a, L: Lens> Engine<'a, L> {
    pub(super) fn new(lens: &'a L, universe: &Universe<SourceOf<L>, ViewOf<L>>) -> Self {
        let src = Space::new(lens.source(), &universe.sources);
        let view = Space::new(lens.view(), &universe.views);
        let (ns, nv) = (src.n, view.n);
        let mut e = Engine { lens, src, view, gets: Vec::new(), puts: vec![UNKNOWN; ns * nv], extra_puts: BTreeMap::new() };
        for s in 0..ns {
            e.get(s);
            for v in 0..nv {
                e.put(s, v);
            }
        }
        e
    }

    fn get(&mut self, s: usize) -> usize {
        if s >= self.gets.len() {
            self.gets.resize(s + 1, UNKNOWN);
        }
        if self.gets[s] == UNKNOWN {
            let g = self.lens.get(&self.src.elems[s]);
            self.gets[s] = self.view.intern(&g) as u32;
        }
        self.gets[s] as usize
    }

    /// `get` of a universe source, after tabulation.
    fn g(&self, s: usize) -> usize {
        self.gets[s] as usize
    }

    fn put(&mut self, s: usize, v: usize) -> Option<usize> {
        let (ns, nv) = (self.src.n, self.view.n);
        if s < ns && v < nv {
            let k = s * nv + v;
            if self.puts[k] == UNKNOWN {
                self.puts[k] = match self.lens.put(&self.src.elems[s], &self.view.elems[v]) {
                    Ok(r) => self.src.intern(&r) as u32,
                    Err(_) => UNDEFINED,
                };
            }
            return (self.puts[k] != UNDEFINED).then_some(self.puts[k] as usize);
        }
        if let Some(r) = self.extra_puts.get(&(s, v)) {
            return *r;
        }
        let r = self.lens.put(&self.src.elems[s], &self.view.elems[v]).ok().map(|r| self.src.intern(&r));
        self.extra_puts.insert((s, v), r);
        r
    }

    /// `put` on a universe pair, after tabulation.
    fn p(&self, s: usize, v: usize) -> Option<usize> {
        let r = self.puts[s * self.view.n + v];
        (r != UNDEFINED).then_some(r as usize)
    }

    fn s(&self, i: usize) -> SourceOf<L> {
        self.src.elems[i].clone()
    }

    fn v(&self, i: usize) -> ViewOf<L> {
        self.view.elems[i].clone()
    }

    fn os(&self, i: Option<usize>) -> Option<SourceOf<L>> {
        i.map(|i| self.s(i))
    }

    /// The first counterexample to a basic (non-composite) law, in the order
    /// of the quantified variables.
    pub(super) fn find(&mut self, law: LawId) -> Option<Witness<SourceOf<L>, ViewOf<L>>> {
        match law {
            LawId::ClassicalConsistency => self.classical_consistency(),
            LawId::ClassicalAcceptability => self.classical_acceptability(),
            LawId::Stability => self.stability(),
            LawId::PsConsistency => self.ps_consistency(),
            LawId::PsAcceptability => self.ps_acceptability(),
            LawId::PsStability => self.ps_stability(),
            LawId::GetMonotone => self.get_monotone(),
            LawId::ViewStability => self.view_stability(),
            LawId::PutDeterminesGet => self.put_determines_get(),
            LawId::WPutGet => self.wputget(),
            LawId::WeakWb | LawId::Wb => unreachable!("composite laws are split by the caller"),
        }
    }

    fn classical_consistency(&mut self) -> Option<Witness<SourceOf<L>, ViewOf<L>>> {
        for s in 0..self.src.n {
            for v in 0..self.view.n {
                if let Some(r) = self.p(s, v) {
                    if self.get(r) != v {
                        return Some(Witness::ClassicalConsistency { s: self.s(s), v: self.v(v), put: self.s(r) });
                    }
                }
            }
        }
        None
    }

    fn classical_acceptability(&mut self) -> Option<Witness<SourceOf<L>, ViewOf<L>>> {
        for s in 0..self.src.n {
            let g = self.g(s);
            let r = self.put(s, g);
            if r != Some(s) {
                return Some(Witness::ClassicalAcceptability { s: self.s(s), put: self.os(r) });
            }
        }
        None
    }

    fn stability(&mut self) -> Option<Witness<SourceOf<L>, ViewOf<L>>> {
        for s0 in 0..self.src.n {
            for v in 0..self.view.n {
                let Some(s) = self.p(s0, v) else { continue };
                let g = self.get(s);
                let r = self.put(s, g);
                if r != Some(s) {
                    return Some(Witness::Stability { s0: self.s(s0), v: self.v(v), s: self.s(s), put: self.os(r) });
                }
            }
        }
        None
    }

    fn ps_consistency(&mut self) -> Option<Witness<SourceOf<L>, ViewOf<L>>> {
        let ns = self.src.n;
        for s in 0..ns {
            for v in 0..self.view.n {
                let Some(r) = self.p(s, v) else { continue };
                if let Some(sp) = self.src.up[r].ones_below(ns).find(|&sp| !self.view.le(v, self.g(sp))) {
                    return Some(Witness::PsConsistency { s: self.s(s), v: self.v(v), put: self.s(r), s_prime: self.s(sp) });
                }
            }
        }
        None
    }

    fn ps_acceptability(&mut self) -> Option<Witness<SourceOf<L>, ViewOf<L>>> {
        let nv = self.view.n;
        for s in 0..self.src.n {
            let g = self.g(s);
            let bad = self.view.ids[g].ones_below(nv).find(|&v| !self.p(s, v).is_some_and(|r| self.src.identical(r, s)));
            if let Some(v) = bad {
                return Some(Witness::PsAcceptability { s: self.s(s), v: self.v(v), put: self.os(self.p(s, v)) });
            }
        }
        None
    }

    fn ps_stability(&mut self) -> Option<Witness<SourceOf<L>, ViewOf<L>>> {
        let (ns, nv) = (self.src.n, self.view.n);
        for s0 in 0..ns {
            for v in 0..nv {
                let Some(s) = self.p(s0, v) else { continue };
                for sp in self.src.up[s].ones_below(ns) {
                    let gp = self.g(sp);
                    for v2 in self.view.up[v].common_below(&self.view.ids[gp], nv) {
                        if let Some(s2) = self.p(sp, v2) {
                            if !self.src.le(s, s2) {
                                return Some(Witness::PsStability {
                                    s0: self.s(s0),
                                    v: self.v(v),
                                    s: self.s(s),
                                    s_prime: self.s(sp),
                                    v2: self.v(v2),
                                    s2: self.s(s2),
                                });
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn get_monotone(&mut self) -> Option<Witness<SourceOf<L>, ViewOf<L>>> {
        let ns = self.src.n;
        for s in 0..ns {
            if let Some(sp) = self.src.up[s].ones_below(ns).find(|&sp| !self.view.le(self.g(s), self.g(sp))) {
                return Some(Witness::GetMonotone { s: self.s(s), s_prime: self.s(sp) });
            }
        }
        None
    }

    fn view_stability(&mut self) -> Option<Witness<SourceOf<L>, ViewOf<L>>> {
        for s in 0..self.src.n {
            let g = self.g(s);
            let r = self.put(s, g);
            let stable = match r {
                Some(r) => self.get(r) == g,
                None => false,
            };
            if !stable {
                return Some(Witness::ViewStability { s: self.s(s), put: self.os(r) });
            }
        }
        None
    }

    fn put_determines_get(&mut self) -> Option<Witness<SourceOf<L>, ViewOf<L>>> {
        let (ns, nv) = (self.src.n, self.view.n);
        // reach[v] = the universe sources lying above some put(s0, v).
        let reach: Vec<Bits> = (0..nv)
            .map(|v| {
                let mut acc = Bits::default();
                for s0 in 0..ns {
                    if let Some(r) = self.p(s0, v) {
                        acc.or_with(&self.src.up[r]);
                    }
                }
                acc
            })
            .collect();
        for s in 0..ns {
            let vs: Vec<usize> = (0..nv).filter(|&v| reach[v].get(s)).collect();
            let max = vs.iter().copied().find(|&m| vs.iter().all(|&v| self.view.le(v, m)));
            if max != Some(self.g(s)) {
                return Some(Witness::PutDeterminesGet { s: self.s(s), max: max.map(|m| self.v(m)) });
            }
        }
        None
    }

    fn wputget(&mut self) -> Option<Witness<SourceOf<L>, ViewOf<L>>> {
        for s0 in 0..self.src.n {
            for v in 0..self.view.n {
                let Some(s) = self.p(s0, v) else { continue };
                let g = self.get(s);
                let r = self.put(s0, g);
                if r != Some(s) {
                    return Some(Witness::WPutGet { s0: self.s(s0), v: self.v(v), s: self.s(s), put: self.os(r) });
                }
            }
        }
        None
    }
}
