//! Exhaustive generation of small finite i-posets, for law checking.

use super::{FiniteIPoset, IPoset, Point};
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

/// Every partial order on `n` elements, one representative per isomorphism
/// class, with `I = ≤` and no merge. Elements are labelled `a`, `b`, ...
///
/// Representatives are found by enumerating naturally labelled orders
/// (`i ≤ j` only if `i ≤ j` numerically), which reach every class, and keeping
/// the first order of each canonical form. Practical for `n ≤ 6`.
pub fn all_posets(n: usize) -> Vec<FiniteIPoset> {
    assert!(n >= 1 && n <= 8, "poset generation is meant for tiny carriers");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut le = alloc::vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                le[i * n + j] = true;
            }
        }
        if !transitive(&le, n) {
            continue;
        }
        let canon = perms.iter().map(|p| encode(&le, n, p)).min().unwrap_or(0);
        if seen.insert(canon) {
            let labels: Vec<String> = (0..n).map(|i| String::from(char::from(b'a' + i as u8))).collect();
            out.push(FiniteIPoset::from_relations_unchecked(labels, |a, b| le[a * n + b], |a, b| le[a * n + b], None));
        }
    }
    out
}

/// Every valid identical-update relation for the order of `p`.
///
/// Reflexive pairs and the pairs `(Ω, s)` are forced; every other pair of
/// `≤` is optional. The merge table of `p` is carried over unchanged.
pub fn identity_variants(p: &FiniteIPoset) -> Vec<FiniteIPoset> {
    let least = p.least();
    let optional: Vec<(Point, Point)> =
        p.le_pairs().filter(|(a, b)| a != b && Some(*a) != least).collect();
    assert!(optional.len() < 20, "too many optional identity pairs to enumerate");
    (0u32..1 << optional.len())
        .map(|mask| {
            p.with_identical(|a, b| {
                a == b
                    || (Some(a) == least && p.le(&a, &b))
                    || optional.iter().position(|&q| q == (a, b)).is_some_and(|k| mask >> k & 1 == 1)
            })
            .expect("identity variant built inside the order is valid")
        })
        .collect()
}

fn transitive(le: &[bool], n: usize) -> bool {
    (0..n).all(|a| (0..n).all(|b| !le[a * n + b] || (0..n).all(|c| !le[b * n + c] || le[a * n + c])))
}

fn encode(le: &[bool], n: usize, perm: &[usize]) -> u64 {
    let mut code = 0u64;
    for a in 0..n {
        for b in 0..n {
            code = code << 1 | u64::from(le[perm[a] * n + perm[b]]);
        }
    }
    code
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap(n, &mut cur, &mut out);
    out
}

fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap(k - 1, cur, out);
        let j = if k % 2 == 0 { i } else { 0 };
        cur.swap(j, k - 1);
    }
}
