//! Named fixture lenses: three counterexamples and lawful regressions.
//!
//! * `bad` over a finite prefix `{0̲, …, k̲}` of the naturals ordered
//!   numerically with `I = ≤`, viewed into the unit type: `get _ = ()`,
//!   `put (0̲, ()) = 0̲`, `put (n+1̲, ()) = n̲`. Weakly well-behaved but not
//!   ps-stable.
//! * `putNonmono1 : Bool_Ω → 1_Ω`, well-behaved although its `put` is not
//!   monotone in the source.
//! * `constUnit_ns : 1_Ω → 1_Ω` with `get _ = ()`, `put (s, ()) = s`,
//!   `put (s, Ω) = Ω`. Well-behaved but breaks WPutGet.

use super::{LawId, Verdict};
use crate::iposet::{materialize, Enumerable, FiniteIPoset, IPoset, Lifted, Product, Discrete, Point};
use crate::lens::{constant_lens, dup_lens, identity_lens, untag_s, FnLens, Lens};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::vec;

/// A lens over explicit finite domains.
pub type FiniteLens = FnLens<FiniteIPoset, FiniteIPoset>;

/// A fixture with the verdicts it is expected to produce.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub lens: FiniteLens,
    pub expected: Vec<(LawId, Verdict)>,
}

/// `{0̲, …, k̲}` with the numeric order and `I = ≤`.
pub fn naturals(k: usize) -> FiniteIPoset {
    FiniteIPoset::chain((0..=k).map(natural)).expect("a chain is a valid i-poset")
}

/// The label of `n̲`.
pub fn natural(n: usize) -> String {
    format!("{n}\u{332}")
}

/// The unit i-poset `1 = {()}`.
pub fn unit() -> FiniteIPoset {
    FiniteIPoset::discrete(["()"]).expect("valid")
}

/// `1_Ω = {Ω ≤ ()}` with `Ω` identical for both.
pub fn unit_omega() -> FiniteIPoset {
    FiniteIPoset::chain(["Ω", "()"]).expect("valid")
}

/// `Bool_Ω`: `Ω` below (and identical for) `False` and `True`.
pub fn bool_omega() -> FiniteIPoset {
    FiniteIPoset::builder(["Ω", "False", "True"])
        .both("Ω", "False")
        .both("Ω", "True")
        .join_merge()
        .build()
        .expect("valid")
}

/// `bad`, truncated to `{0̲, …, k̲}`.
pub fn bad(k: usize) -> FiniteLens {
    let src = naturals(k);
    let unit = unit();
    let u = unit.at("()");
    FnLens::new("bad", src, unit, move |_| u, |s: &Point, _| Some(Point(s.0.saturating_sub(1))))
}

pub fn put_nonmono1() -> FiniteLens {
    let (src, view) = (bool_omega(), unit_omega());
    let (omega, tt) = (src.at("Ω"), src.at("True"));
    let (vo, vu) = (view.at("Ω"), view.at("()"));
    FnLens::new(
        "putNonmono1",
        src,
        view,
        move |s| if *s == omega { vo } else { vu },
        move |s, v| {
            Some(if *v == vo {
                omega
            } else if *s != omega {
                *s
            } else {
                tt
            })
        },
    )
}

pub fn const_unit_ns() -> FiniteLens {
    let d = unit_omega();
    let (omega, u) = (d.at("Ω"), d.at("()"));
    FnLens::new("constUnit_ns", d.clone(), d, move |_| u, move |s, v| Some(if *v == omega { omega } else { *s }))
}

/// Copies a lens over finite domains into explicit tables.
pub fn tabulate<L>(name: &str, l: &L) -> FiniteLens
where
    L: Lens,
    L::Source: Enumerable,
    L::View: Enumerable,
{
    let (src, xs) = materialize(l.source());
    let (view, ys) = materialize(l.view());
    let index_of_view = |y: &<L::View as IPoset>::Elem| ys.iter().position(|z| z == y).expect("get stays in the carrier");
    let gets: Vec<Point> = xs.iter().map(|x| Point(index_of_view(&l.get(x)))).collect();
    let puts: Vec<Option<Point>> = xs
        .iter()
        .flat_map(|x| ys.iter().map(move |y| (x, y)))
        .map(|(x, y)| l.put(x, y).ok().and_then(|r| xs.iter().position(|z| *z == r)).map(Point))
        .collect();
    let nv = ys.len();
    FnLens::new(name, src, view, move |s: &Point| gets[s.0], move |s: &Point, v: &Point| puts[s.0 * nv + v.0])
}

/// The counterexample fixtures followed by lawful primitives.
pub fn fixture_lenses() -> Vec<Fixture> {
    use LawId::*;
    use Verdict::*;
    let lift12 = Lifted::new(Discrete::new(vec![1u8, 2]));
    let pair = Product::new(lift12.clone(), lift12.clone());
    let b = bool_omega();
    vec![
        Fixture { name: "bad", lens: bad(5), expected: vec![(WeakWb, Holds), (PsStability, Fails), (Wb, Fails)] },
        Fixture { name: "putNonmono1", lens: put_nonmono1(), expected: vec![(Wb, Holds)] },
        Fixture { name: "constUnit_ns", lens: const_unit_ns(), expected: vec![(Wb, Holds), (WPutGet, Fails)] },
        Fixture { name: "identity", lens: tabulate("identity", &identity_lens(b.clone())), expected: vec![(Wb, Holds)] },
        Fixture {
            name: "constant",
            lens: tabulate("constant", &constant_lens(b.clone(), unit_omega(), Point(1)).expect("Bool_Ω has Ω")),
            expected: vec![(Wb, Holds)],
        },
        Fixture { name: "dup", lens: tabulate("dup", &dup_lens(pair)), expected: vec![(Wb, Holds)] },
        Fixture { name: "untagS", lens: tabulate("untagS", &untag_s(lift12)), expected: vec![(Wb, Holds)] },
    ]
}

/// Sanity accessor used by the fixtures' tests: `put` on labelled elements.
pub fn put_labels(l: &FiniteLens, s: &str, v: &str) -> Option<String> {
    let r = l.put(&l.source().at(s), &l.view().at(v)).ok()?;
    Some(String::from(l.source().label(r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_definitions_match_their_tables() {
        let b = bad(5);
        assert_eq!(b.get(&Point(4)), b.view().at("()"));
        assert_eq!(put_labels(&b, &natural(0), "()").as_deref(), Some("0\u{332}"));
        assert_eq!(put_labels(&b, &natural(3), "()").as_deref(), Some("2\u{332}"));

        let p = put_nonmono1();
        assert_eq!(put_labels(&p, "Ω", "()").as_deref(), Some("True"));
        assert_eq!(put_labels(&p, "False", "()").as_deref(), Some("False"));
        assert_eq!(put_labels(&p, "True", "Ω").as_deref(), Some("Ω"));

        let c = const_unit_ns();
        assert_eq!(put_labels(&c, "()", "()").as_deref(), Some("()"));
        assert_eq!(put_labels(&c, "()", "Ω").as_deref(), Some("Ω"));
        assert_eq!(put_labels(&c, "Ω", "()").as_deref(), Some("Ω"));
    }

    #[test]
    fn tabulation_preserves_behaviour() {
        let lift12 = Lifted::new(Discrete::new(vec![1u8, 2]));
        let d = dup_lens(Product::new(lift12.clone(), lift12));
        let t = tabulate("dup", &d);
        assert_eq!(t.source().len(), 9);
        assert_eq!(t.view().len(), 81);
        let a = t.source().at("(1, Ω)");
        let b = t.source().at("(Ω, 2)");
        let v = t.view().at("((1, Ω), (Ω, 2))");
        assert_eq!(t.source().label(t.put(&a, &v).unwrap()), "(1, 2)");
        assert_eq!(t.get(&b), t.view().at("((Ω, 2), (Ω, 2))"));
    }
}
