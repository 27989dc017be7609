//! Action-oracle agreement: the generic coset-factorisation action against
//! every applicable printed closed form (the Weyl permutation, the diagonal
//! and lower-unitriangular expansions, the upper-unitriangular expansions in
//! both variants), plus the printed spans of the subgroup-generated
//! submodules.

use std::time::Instant;

use psgl_core::linalg::Subspace;
use psgl_core::nmonoid::CarrySet;
use psgl_core::psrep::RepSpace;
use psgl_core::weights::{r_minus_2gamma, ThetaElem};
use psgl_core::{Fq, Mat2, NClass, R2Elem, Variant};
use serde_json::json;

use crate::report::{CheckReport, Verdict};
use crate::session::{canonical_r, Session};

fn spin_with(space: &RepSpace, mats: &[Mat2], seeds: &[Vec<Fq>]) -> Subspace {
    let k = space.field();
    let maps: Vec<_> = mats.iter().map(|g| space.action_map(g)).collect();
    let mut sub = Subspace::zero(space.dim());
    let mut work: Vec<Vec<Fq>> = seeds.to_vec();
    while let Some(v) = work.pop() {
        if let Some(row) = sub.insert(k, &v) {
            for map in &maps {
                work.push(map.apply(k, &row));
            }
        }
    }
    sub
}

fn scaled(k: &psgl_core::FieldSpec, v: &[Fq], c: Fq) -> Vec<Fq> {
    v.iter().map(|&x| k.mul(c, x)).collect()
}

pub fn action_oracles(p: u64, f: usize, variant: Variant, rs: &[u64]) -> CheckReport {
    let start = Instant::now();
    let session = Session::new(p, f, variant).expect("valid parameters");
    let m = session.monoid;
    let k = &*session.field;
    let mut verdict = Verdict::new();
    let mut comparisons = 0u64;

    for &raw in rs {
        let r = canonical_r(&m, raw);
        let v = session.space(2, r);

        // the Weyl element permutes the basis up to sign, in every variant
        let w = Mat2::w(&session.ring);
        for &label in v.f_labels() {
            comparisons += 1;
            let image = v.act(&w, &v.f_vector(label).unwrap());
            let (sign, target) = v.w_explicit(label).unwrap();
            let expected = scaled(k, &v.f_vector(target).unwrap(), sign);
            verdict.require(image == expected, || {
                json!({"op": "w", "r": r.display(f), "label": label.display(&m)})
            });
        }

        // diagonal 1 + d pi and lower unitriangular, on finite labels
        for x in k.enumerate() {
            let d2 = Mat2::diag_one_pi(&session.ring, x);
            let lb = Mat2::lower_pi(&session.ring, x);
            for &label in v.f_labels() {
                if label.j0.is_none() {
                    continue;
                }
                comparisons += 2;
                let fv = v.f_vector(label).unwrap();
                verdict.require(v.act(&d2, &fv) == v.d2_explicit(x, label).unwrap(), || {
                    json!({"op": "diag-pi", "r": r.display(f), "x": x.0, "label": label.display(&m)})
                });
                verdict.require(v.act(&lb, &fv) == v.lbar_explicit(x, label).unwrap(), || {
                    json!({"op": "lower-pi", "r": r.display(f), "x": x.0, "label": label.display(&m)})
                });
            }
        }

        // upper unitriangular, split by variant
        for b0 in k.enumerate() {
            for b1 in k.enumerate() {
                let u = Mat2::upper(&session.ring, R2Elem::new(b0, b1));
                for &label in v.f_labels() {
                    let fv = v.f_vector(label).unwrap();
                    let oracle = match (label.j0, variant) {
                        (Some(_), Variant::EqualChar) => {
                            Some(v.u2_explicit_ramified(b0, b1, label).unwrap())
                        }
                        (Some(_), Variant::Witt) => {
                            Some(v.u2_explicit_witt(b0, b1, label).unwrap())
                        }
                        (None, Variant::EqualChar) => {
                            Some(v.u2_explicit_ramified_infinity(b0, b1, label.j1).unwrap())
                        }
                        (None, Variant::Witt) => None,
                    };
                    if let Some(expected) = oracle {
                        comparisons += 1;
                        verdict.require(v.act(&u, &fv) == expected, || {
                            json!({
                                "op": "upper", "r": r.display(f),
                                "b0": b0.0, "b1": b1.0, "label": label.display(&m),
                            })
                        });
                    }
                }
            }
        }

        subgroup_spans(&session, &v, variant, &mut verdict, &mut comparisons);
    }

    verdict.note(json!({"comparisons": comparisons}));
    verdict.into_report(
        "action-oracles",
        json!({"p": p, "f": f, "variant": variant.to_string(), "r": rs}),
        start.elapsed(),
    )
}

/// The printed spans of the submodules generated under each unipotent or
/// diagonal subgroup.
fn subgroup_spans(
    session: &Session,
    v: &RepSpace,
    variant: Variant,
    verdict: &mut Verdict,
    comparisons: &mut u64,
) {
    let m = session.monoid;
    let k = &*session.field;
    let f = m.f;
    let r = v.r;

    let basis_elems: Vec<Fq> = (0..f)
        .map(|i| {
            let mut coeffs = vec![0u8; f];
            coeffs[i] = 1;
            k.from_coeffs(&coeffs)
        })
        .collect();
    let d2_gens: Vec<Mat2> =
        basis_elems.iter().map(|&x| Mat2::diag_one_pi(&session.ring, x)).collect();
    let lbar_gens: Vec<Mat2> =
        basis_elems.iter().map(|&x| Mat2::lower_pi(&session.ring, x)).collect();
    let mut u2_gens: Vec<Mat2> = basis_elems
        .iter()
        .map(|&x| Mat2::upper(&session.ring, session.ring.teichmueller(x)))
        .collect();
    u2_gens.extend(
        basis_elems
            .iter()
            .map(|&x| Mat2::upper(&session.ring, R2Elem::new(k.zero(), x))),
    );

    for &label in v.f_labels() {
        let fv = v.f_vector(label).unwrap();
        match label.j0 {
            Some(j0) => {
                // diagonal subgroup span
                let expected: Vec<ThetaElem> = m
                    .subclasses(label.j1)
                    .into_iter()
                    .map(|j1p| ThetaElem::finite(m.add(j0, j1p), m.digit_sub(label.j1, j1p)))
                    .collect();
                *comparisons += 1;
                verdict.require(
                    spin_with(v, &d2_gens, &[fv.clone()])
                        == session.label_span(v, &expected),
                    || json!({"op": "span-diag", "label": label.display(&m)}),
                );
                // lower unitriangular span
                let expected: Vec<ThetaElem> = m
                    .subclasses(label.j1)
                    .into_iter()
                    .map(|j1p| {
                        ThetaElem::finite(
                            m.add(j0, m.add(j1p, j1p)),
                            m.digit_sub(label.j1, j1p),
                        )
                    })
                    .collect();
                *comparisons += 1;
                verdict.require(
                    spin_with(v, &lbar_gens, &[fv.clone()])
                        == session.label_span(v, &expected),
                    || json!({"op": "span-lower", "label": label.display(&m)}),
                );
                // upper unitriangular span (ramified closed form)
                if variant == Variant::EqualChar {
                    let mut expected: Vec<ThetaElem> = Vec::new();
                    for j0p in m.subclasses(j0) {
                        for j1p in m.subclasses(label.j1) {
                            expected.push(ThetaElem::finite(j0p, j1p));
                        }
                    }
                    *comparisons += 1;
                    verdict.require(
                        spin_with(v, &u2_gens, &[fv.clone()])
                            == session.label_span(v, &expected),
                        || json!({"op": "span-upper", "label": label.display(&m)}),
                    );
                }
            }
            None => {
                let j1 = label.j1;
                // diagonal subgroup span at the infinity label
                let mut expected = vec![ThetaElem::infinity(j1)];
                for j1p in m.subclasses(j1) {
                    if !j1p.is_zero() {
                        expected.push(ThetaElem::finite(
                            m.add(r_minus_2gamma(&m, r, j1), j1p),
                            m.digit_sub(j1, j1p),
                        ));
                    }
                }
                *comparisons += 1;
                verdict.require(
                    spin_with(v, &d2_gens, &[fv.clone()])
                        == session.label_span(v, &expected),
                    || json!({"op": "span-diag-inf", "label": label.display(&m)}),
                );
                // upper unitriangular span at the infinity label (ramified)
                if variant == Variant::EqualChar {
                    let rm2 = r_minus_2gamma(&m, r, j1);
                    let mut expected = vec![ThetaElem::infinity(j1)];
                    for j0p in m.subclasses(rm2) {
                        for j1p in m.subclasses(j1) {
                            if !(j0p == rm2 && j1p == j1) {
                                expected.push(ThetaElem::finite(j0p, j1p));
                            }
                        }
                    }
                    *comparisons += 1;
                    verdict.require(
                        spin_with(v, &u2_gens, &[fv.clone()])
                            == session.label_span(v, &expected),
                        || json!({"op": "span-upper-inf", "label": label.display(&m)}),
                    );
                }
            }
        }
    }

    // the unramified upper-unitriangular span at the special labels
    // (j0, p^I) with supp(j0) disjoint from I - 1
    if variant == Variant::Witt {
        for i_set in CarrySet::enumerate(f) {
            let shifted = i_set.shift_down(1, f);
            for j0 in m.enumerate() {
                if !j0.support(f).intersection(shifted).is_empty() {
                    continue;
                }
                let label = ThetaElem::finite(j0, m.p_of_set(i_set));
                let fv = v.f_vector(label).unwrap();
                let expected = witt_upper_span_labels(&m, j0, i_set);
                *comparisons += 1;
                verdict.require(
                    spin_with(v, &u2_gens, &[fv])
                        == session.label_span(v, &expected),
                    || json!({"op": "span-upper-witt", "label": label.display(&m)}),
                );
            }
        }
    }
}

/// The printed basis of the upper-unitriangular submodule at a special label
/// in the unramified variant: labels `(l + p^{J}, p^{J''})` built from digit
/// choices on `(I' - 1)` and the support of `j0`.
fn witt_upper_span_labels(
    m: &psgl_core::NMonoid,
    j0: NClass,
    i_set: CarrySet,
) -> Vec<ThetaElem> {
    let f = m.f;
    let supp = j0.support(f);
    let mut out = Vec::new();
    for i_prime in CarrySet::enumerate(f) {
        if !i_prime.is_subset(i_set) {
            continue;
        }
        for j_set in CarrySet::enumerate(f) {
            if !j_set.is_subset(i_set.difference(i_prime)) {
                continue;
            }
            // digit choices: positions in I' - 1 take 1..=p-1, positions in
            // supp(j0) take 0..=digit of j0
            let positions: Vec<(usize, u8, u8)> = (0..f)
                .filter_map(|i| {
                    if i_prime.shift_down(1, f).contains(i) {
                        Some((i, 1u8, (m.p - 1) as u8))
                    } else if supp.contains(i) {
                        Some((i, 0u8, j0.digit(i, f)))
                    } else {
                        None
                    }
                })
                .collect();
            for choice in digit_choices(&positions) {
                let mut digits = vec![0u8; f];
                for (&(i, _, _), &a) in positions.iter().zip(&choice) {
                    digits[i] = a;
                }
                out.push(ThetaElem::finite(m.from_digits(&digits), m.p_of_set(j_set)));
            }
        }
    }
    dedup(out)
}

/// All tuples with entry `t` ranging over `positions[t].1 ..= positions[t].2`.
fn digit_choices(positions: &[(usize, u8, u8)]) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for &(_, lo, hi) in positions {
        let mut next = Vec::new();
        for prefix in &out {
            for a in lo..=hi {
                let mut ext = prefix.clone();
                ext.push(a);
                next.push(ext);
            }
        }
        out = next;
    }
    out
}

fn dedup(mut labels: Vec<ThetaElem>) -> Vec<ThetaElem> {
    labels.sort_unstable();
    labels.dedup();
    labels
}
