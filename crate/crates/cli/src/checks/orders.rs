//! Order-theoretic checks: agreement of the generated preorder on basis
//! labels with the closed-form order on carry-set types, and the dimension
//! bookkeeping of the constituent recursion.

use std::time::Instant;

use psgl_core::nmonoid::NMonoid;
use psgl_core::weights::{
    admissible_types, leq_r_closed, multiset_dimension, r_minus_2gamma, s_j, t_j,
    BorelCharacter, GeneratedOrder, JhCalc, SerreWeight, WeightMultiset,
};
use psgl_core::CarrySet;
use serde_json::json;

use crate::report::{CheckReport, Verdict};

/// For every exponent `r`: the equivalence classes of the generated preorder
/// biject with the admissible types through the carry-set map, and the two
/// orders agree on all pairs.
pub fn order_equivalence(p: u64, f: usize) -> CheckReport {
    let start = Instant::now();
    let m = NMonoid::new(p, f);
    let mut verdict = Verdict::new();
    let mut pairs = 0u64;
    for r in m.enumerate().skip(1) {
        let ord = GeneratedOrder::build(&m, r);
        let types = admissible_types(&m, r);
        verdict.require(ord.class_count() == types.len(), || {
            json!({
                "r": r.display(f),
                "classes": ord.class_count(),
                "admissible_types": types.len(),
            })
        });
        // the carry-set map is constant on classes and lands on the
        // admissible types bijectively
        let mut class_types = Vec::with_capacity(ord.class_count());
        for c in 0..ord.class_count() {
            let t = ord.class_type(c, r);
            for member in ord.class_members(c) {
                let u = psgl_core::weights::upsilon(&m, *member, r);
                verdict.require(u == t, || {
                    json!({"r": r.display(f), "class": c, "member": member.display(&m)})
                });
            }
            verdict.require(types.contains(&t), || {
                json!({"r": r.display(f), "type": t.display(&m), "reason": "not admissible"})
            });
            verdict.require(!class_types.contains(&t), || {
                json!({"r": r.display(f), "type": t.display(&m), "reason": "duplicate class image"})
            });
            class_types.push(t);
        }
        for (ca, &ta) in class_types.iter().enumerate() {
            for (cb, &tb) in class_types.iter().enumerate() {
                pairs += 1;
                let generated = ord.leq_classes(ca, cb);
                let closed = leq_r_closed(&m, ta, tb, r);
                verdict.require(generated == closed, || {
                    json!({
                        "r": r.display(f),
                        "a": ta.display(&m),
                        "b": tb.display(&m),
                        "generated": generated,
                        "closed": closed,
                    })
                });
            }
        }
    }
    verdict.note(json!({"pairs_checked": pairs}));
    verdict.into_report("order-equivalence", json!({"p": p, "f": f}), start.elapsed())
}

/// The constituent multiset assembled filtration step by filtration step:
/// at each level `beta`, the twisted admissible weights of the residual
/// exponent `r - 2 beta`.
fn assemble_from_filtration(m: &NMonoid, r: psgl_core::NClass) -> WeightMultiset {
    let mut out = WeightMultiset::new();
    for beta in m.enumerate() {
        let s = r_minus_2gamma(m, r, beta);
        for set in CarrySet::enumerate(m.f) {
            if m.is_admissible(set, s) {
                let w = SerreWeight::new(m, m.add(beta, s_j(m, s, set)), &t_j(m, s, set));
                *out.entry(w).or_insert(0) += 1;
            }
        }
    }
    out
}

/// Dimension bookkeeping of the recursion: the level-two multiset carries
/// total dimension `(q+1) q` and agrees with the filtration assembly; the
/// level-three multiset carries `(q+1) q^2`.
pub fn jh_bookkeeping(p: u64, f: usize, rs: &[u64]) -> CheckReport {
    let start = Instant::now();
    let m = NMonoid::new(p, f);
    let q = m.q();
    let mut verdict = Verdict::new();
    let mut calc = JhCalc::new(&m);
    for &raw in rs {
        let r = crate::session::canonical_r(&m, raw);
        let chi = BorelCharacter::new(&m, m.zero(), r);
        let ms2 = calc.jh_multiset(2, chi);
        let dim2 = multiset_dimension(&m, &ms2);
        verdict.require(dim2 == (q + 1) * q, || {
            json!({"r": r.display(f), "level": 2, "dimension": dim2, "expected": (q + 1) * q})
        });
        let assembled = assemble_from_filtration(&m, r);
        verdict.require(ms2 == assembled, || {
            json!({
                "r": r.display(f),
                "recursion": ms2.iter().map(|(w, c)| (w.display(&m), c)).collect::<Vec<_>>(),
                "assembled": assembled.iter().map(|(w, c)| (w.display(&m), c)).collect::<Vec<_>>(),
            })
        });
        let ms3 = calc.jh_multiset(3, chi);
        let dim3 = multiset_dimension(&m, &ms3);
        verdict.require(dim3 == (q + 1) * q * q, || {
            json!({"r": r.display(f), "level": 3, "dimension": dim3, "expected": (q + 1) * q * q})
        });
    }
    verdict.into_report(
        "jh-dimensions",
        json!({"p": p, "f": f, "r": rs}),
        start.elapsed(),
    )
}
