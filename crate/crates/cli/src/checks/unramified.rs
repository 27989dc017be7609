//! Structure of the distinguished cyclic submodule in the unramified
//! variant: its constituents, the lattice of the attached family of
//! submodules against the combinatorial order, and the irreducible cosocles.

use std::time::Instant;

use psgl_core::linalg::{hom_space, socle_filtration, ModuleHandle, Subspace};
use psgl_core::weights::{theta1_enumerate, unram_leq, unram_sigma, WeightMultiset};
use psgl_core::{CarrySet, Variant};
use serde_json::json;

use crate::report::{CheckReport, Verdict};
use crate::session::{canonical_r, Session};

/// The unramified structure theorem at one generic exponent: the cyclic
/// module generated at the all-ones level is multiplicity-free with the
/// predicted constituents, the family of cyclic submodules realizes the
/// partial order by inclusion, and each member has the predicted irreducible
/// cosocle.
pub fn unramified_structure(p: u64, f: usize, raw_r: u64) -> CheckReport {
    let start = Instant::now();
    let session = Session::new(p, f, Variant::Witt).expect("valid parameters");
    let m = session.monoid;
    let k = &*session.field;
    let r = canonical_r(&m, raw_r);
    let mut verdict = Verdict::new();

    // genericity of the exponent
    for i in 0..f {
        let d = r.digit(i, f) as u64;
        verdict.require((3..=p - 3).contains(&d), || {
            json!({"r": r.display(f), "digit": i, "reason": "exponent not generic"})
        });
    }

    let space = session.space(2, r);
    let handle = session.handle(&space);
    let theta1 = theta1_enumerate(f);
    verdict.note(json!({"theta1_size": theta1.len()}));

    // the cyclic submodules of the family
    let spans: Vec<Subspace> = theta1
        .iter()
        .map(|&t| session.spin(&space, &[space.f_theta_vector(t).unwrap()]))
        .collect();

    // the distinguished generator spans the maximal member
    let max = session.spin(&space, &[space.m_chi_generator().unwrap()]);
    let max_idx = theta1
        .iter()
        .position(|&t| t.j == CarrySet::EMPTY && t.i == CarrySet::full(f))
        .expect("maximal element present");
    verdict.require(spans[max_idx] == max, || {
        json!({"reason": "the all-ones label does not span the maximal member"})
    });

    // total dimension bookkeeping
    let expected_dim: u64 =
        theta1.iter().map(|&t| unram_sigma(&m, t, r).dimension(f)).sum();
    verdict.require(max.dim() as u64 == expected_dim, || {
        json!({"dim": max.dim(), "expected": expected_dim})
    });

    // inclusion realizes the partial order
    for (a, &ta) in theta1.iter().enumerate() {
        for (b, &tb) in theta1.iter().enumerate() {
            let included = spans[b].contains_subspace(k, &spans[a]);
            let expected = unram_leq(f, ta, tb);
            verdict.require(included == expected, || {
                json!({
                    "low": ta.display(f), "high": tb.display(f),
                    "included": included, "order": expected,
                })
            });
        }
    }

    // irreducible cosocles
    let models = session.weight_models(r).expect("models");
    for (idx, &theta) in theta1.iter().enumerate() {
        let sub = handle.submodule(&spans[idx]).expect("stable");
        let own = unram_sigma(&m, theta, r);
        for (w, model) in &models {
            let hom_dim = hom_space(&sub, model).expect("tags").len();
            let expected = usize::from(*w == own);
            verdict.require(hom_dim == expected, || {
                json!({
                    "theta": theta.display(f), "weight": w.display(&m),
                    "hom": hom_dim, "expected": expected,
                })
            });
        }
    }

    // multiplicity-freeness and the exact constituent set, from the socle
    // filtration of the maximal member
    let max_handle = handle.submodule(&max).expect("stable");
    let candidates: Vec<ModuleHandle> = models.values().cloned().collect();
    let chain = socle_filtration(&max_handle, &candidates).expect("complete candidates");
    let mut seen = WeightMultiset::new();
    let mut previous = Subspace::zero(max_handle.dim);
    for sub in &chain {
        let sub_handle = max_handle.submodule(sub).expect("stable");
        let inner = Subspace::from_vectors(
            k,
            sub.dim(),
            &previous
                .rows()
                .iter()
                .map(|row| sub.coords_of(k, row).expect("contained"))
                .collect::<Vec<_>>(),
        );
        let (piece, _) = sub_handle.quotient(&inner).expect("stable");
        for (w, model) in &models {
            let mult = hom_space(model, &piece).expect("tags").len() as u64;
            if mult > 0 {
                *seen.entry(*w).or_insert(0) += mult;
            }
        }
        previous = sub.clone();
    }
    let mut expected_set = WeightMultiset::new();
    for &t in &theta1 {
        *expected_set.entry(unram_sigma(&m, t, r)).or_insert(0) += 1;
    }
    verdict.require(seen == expected_set, || {
        json!({
            "constituents": seen.iter().map(|(w, c)| (w.display(&m), c)).collect::<Vec<_>>(),
            "expected": expected_set.iter().map(|(w, c)| (w.display(&m), c)).collect::<Vec<_>>(),
        })
    });

    verdict.into_report(
        "unramified-structure",
        json!({"p": p, "f": f, "variant": "witt", "r": r.display(f)}),
        start.elapsed(),
    )
}
