//! Update spaces used as fixtures, and an exhaustive enumerator of small ones.

use super::UpdateSpace;
use crate::iposet::all_posets;
use alloc::format;
use alloc::vec::Vec;

/// Two distinct updates that both leave the single state unchanged but
/// cannot be merged, like `1+:1-:[]` and `1-:1+:[]` in a tagged list of
/// edits. Violates G3 only.
pub fn g3_violation() -> UpdateSpace {
    let (x, y) = ("1+:1-:[]", "1-:1+:[]");
    UpdateSpace::builder(["s"], [x, y]).interp(x, "s", "s").interp(y, "s", "s").build().expect("valid")
}

/// `a, b ≤ c` where `a ⊕ b` is undefined although both lie below `c`.
/// Violates G2 only.
pub fn g2_violation() -> UpdateSpace {
    UpdateSpace::builder(["s", "t"], ["a", "b", "c"])
        .le("a", "c")
        .le("b", "c")
        .merge("a", "c", "c")
        .merge("b", "c", "c")
        .interp("c", "s", "t")
        .interp("c", "t", "t")
        .build()
        .expect("valid")
}

/// `a ⊕ b = j` although `a` and `b` share the possible result `t1` that `j`
/// cannot reach. Violates G1 only.
pub fn g1_violation() -> UpdateSpace {
    UpdateSpace::builder(["s", "t1", "t2"], ["a", "b", "j"])
        .le("a", "j")
        .le("b", "j")
        .join_merge()
        .interp("a", "s", "t1")
        .interp("b", "s", "t1")
        .interp("j", "s", "t2")
        .build()
        .expect("valid")
}

/// Task tables over one id `k` and two records `v1`, `v2`, with
/// upsert/delete updates `(A, D)` applied as `(t ∖ D) ◁ A`.
pub fn dt_toy() -> UpdateSpace {
    let states = ["∅", "{k↦v1}", "{k↦v2}"];
    let updates = ["(∅,∅)", "({k↦v1},∅)", "({k↦v2},∅)", "(∅,{k})"];
    let mut b = UpdateSpace::builder(states, updates);
    for u in &updates[1..] {
        b = b.le(updates[0], u);
    }
    b = b.join_merge();
    for t in states {
        b = b.interp(updates[0], t, t).interp(updates[1], t, states[1]).interp(updates[2], t, states[2]).interp(
            updates[3],
            t,
            states[0],
        );
    }
    b.build().expect("valid")
}

/// A flat space with a least update that keeps every state, and one update
/// per target state. Every condition holds.
pub fn flat_with_least(n: usize) -> UpdateSpace {
    let states: Vec<_> = (0..n).map(|i| format!("s{i}")).collect();
    let mut updates = alloc::vec![alloc::string::String::from("Ω")];
    updates.extend((0..n).map(|i| format!("to s{i}")));
    let mut b = UpdateSpace::builder(states.clone(), updates.clone());
    for u in &updates[1..] {
        b = b.le("Ω", u);
    }
    b = b.join_merge();
    for s in &states {
        b = b.interp("Ω", s, s);
        for (i, t) in states.iter().enumerate() {
            b = b.interp(&updates[i + 1], s, t);
        }
    }
    b.build().expect("valid")
}

/// Every update space with `1..=max_states` states and at most
/// `max_updates` updates, up to isomorphism of `≤_U`: all interpretation
/// tables, and `⊕_U` ranging over the join with any subset of its
/// off-diagonal entries removed.
pub fn enumerate_spaces(max_states: usize, max_updates: usize) -> Vec<UpdateSpace> {
    let mut out = Vec::new();
    for ns in 1..=max_states {
        let states: Vec<_> = (0..ns).map(|i| format!("s{i}")).collect();
        for nu in 0..=max_updates {
            let shapes: Vec<Vec<(usize, usize)>> = if nu == 0 {
                alloc::vec![Vec::new()]
            } else {
                all_posets(nu).iter().map(|p| p.le_pairs().map(|(a, b)| (a.0, b.0)).collect()).collect()
            };
            let updates: Vec<_> = (0..nu).map(|i| format!("u{i}")).collect();
            for le in &shapes {
                let mut base = UpdateSpace::builder(states.clone(), updates.clone());
                for &(a, b) in le {
                    base = base.le_idx(a, b);
                }
                let base = base.join_merge();
                let joined = base.clone().build().expect("valid poset");
                let pairs: Vec<(usize, usize)> = (0..nu)
                    .flat_map(|a| (a + 1..nu).map(move |b| (a, b)))
                    .filter(|&(a, b)| joined.merge_u(a, b).is_some())
                    .collect();
                let cells = ns * nu;
                let tables = (ns + 1).pow(cells as u32);
                for removed in 0..(1usize << pairs.len()) {
                    let mut m = base.clone();
                    for (i, &(a, b)) in pairs.iter().enumerate() {
                        if removed & (1 << i) != 0 {
                            m = m.merge_idx(a, b, None);
                        }
                    }
                    for code in 0..tables {
                        let mut t = m.clone();
                        let mut c = code;
                        for cell in 0..cells {
                            let r = c % (ns + 1);
                            c /= ns + 1;
                            t = t.interp_idx(cell / ns, cell % ns, (r < ns).then_some(r));
                        }
                        out.push(t.build().expect("valid"));
                    }
                }
            }
        }
    }
    out
}
