//! Carry-set identities: the triple-sum exchange law (as sets and as
//! multisets) and the tree-shape invariance of accumulated carry multisets.

use std::time::Instant;

use psgl_core::nmonoid::{NMonoid, TreeShape};
use psgl_core::NClass;
use rand_core::{RngCore, SeedableRng};
use serde_json::json;

use crate::report::{CheckReport, Verdict};

/// Per-element carry counts of the union of two carry sets, viewed as a
/// multiset over `Z/fZ`.
fn carry_counts(m: &NMonoid, pairs: &[(NClass, NClass)]) -> Vec<u32> {
    let mut counts = vec![0u32; m.f];
    for &(a, b) in pairs {
        let set = m.carry_set(a, b);
        for (i, c) in counts.iter_mut().enumerate() {
            if set.contains(i) {
                *c += 1;
            }
        }
    }
    counts
}

/// Exhaustive check of the exchange identity
/// `I(a,c) + I(a+c,b) = I(a,b) + I(a+b,c)`, both as sets and as multisets.
pub fn triple_sum(p: u64, f: usize) -> CheckReport {
    let start = Instant::now();
    let m = NMonoid::new(p, f);
    let mut verdict = Verdict::new();
    let mut triples = 0u64;
    for a in m.enumerate() {
        for b in m.enumerate() {
            for c in m.enumerate() {
                triples += 1;
                let lhs_set = m.carry_set(a, c).union(m.carry_set(m.add(a, c), b));
                let rhs_set = m.carry_set(a, b).union(m.carry_set(m.add(a, b), c));
                verdict.require(lhs_set == rhs_set, || {
                    json!({"kind": "set", "a": a.display(f), "b": b.display(f), "c": c.display(f)})
                });
                let lhs_multi = carry_counts(&m, &[(a, c), (m.add(a, c), b)]);
                let rhs_multi = carry_counts(&m, &[(a, b), (m.add(a, b), c)]);
                verdict.require(lhs_multi == rhs_multi, || {
                    json!({"kind": "multiset", "a": a.display(f), "b": b.display(f), "c": c.display(f)})
                });
            }
        }
    }
    verdict.note(json!({"triples_checked": triples}));
    verdict.into_report("carry-triple-sum", json!({"p": p, "f": f}), start.elapsed())
}

/// Tree invariance: for each leaf count in `3..=5`, all full binary tree
/// shapes produce the same carry multiset on seeded random leaf tuples.
pub fn tree_invariance(p: u64, f: usize, seed: u64) -> CheckReport {
    let start = Instant::now();
    let m = NMonoid::new(p, f);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut verdict = Verdict::new();
    let mut tuples = 0u64;
    for leaves in 3usize..=5 {
        let shapes = TreeShape::enumerate(leaves);
        for _ in 0..200 {
            tuples += 1;
            let tuple: Vec<NClass> =
                (0..leaves).map(|_| m.from_integer(rng.next_u64() % m.q())).collect();
            let reference = m.carry_multiset_tree(&tuple, &shapes[0]).unwrap();
            for shape in &shapes[1..] {
                let other = m.carry_multiset_tree(&tuple, shape).unwrap();
                verdict.require(other == reference, || {
                    json!({
                        "leaves": tuple.iter().map(|l| l.display(f)).collect::<Vec<_>>(),
                    })
                });
            }
        }
    }
    verdict.note(json!({"tuples_checked": tuples, "leaf_counts": [3, 4, 5]}));
    verdict.into_report(
        "carry-tree",
        json!({"p": p, "f": f, "seed": seed}),
        start.elapsed(),
    )
}
