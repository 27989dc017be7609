//! The rank-one base case: spins of basis vectors against the carry-set
//! spans, and the splitting of the space at the trivial character.

use std::time::Instant;

use psgl_core::linalg::{bs_subspace, identify_weight, Subspace};
use psgl_core::weights::ThetaElem;
use psgl_core::{Fq, SerreWeight, Variant};
use serde_json::json;

use crate::report::{CheckReport, Verdict};
use crate::session::Session;

/// For every exponent: the submodule generated by a finite basis vector is
/// the span attached to its carry set, the infinity vector generates the
/// bottom span, and the trivial-character space splits into the two printed
/// pieces.
pub fn bardoe_sin_base(p: u64, f: usize) -> CheckReport {
    let start = Instant::now();
    let session = Session::new(p, f, Variant::EqualChar).expect("valid parameters");
    let m = session.monoid;
    let k = &*session.field;
    let mut verdict = Verdict::new();
    let mut spins = 0u64;
    for r in m.enumerate().skip(1) {
        let v1 = session.space(1, r);
        for j0 in m.enumerate() {
            spins += 1;
            let rest = m.sub_group(r, j0).unwrap();
            let expected = bs_subspace(&v1, m.carry_set(j0, rest));
            let spun = session.spin(
                &v1,
                &[v1.f_vector(ThetaElem::finite(j0, m.zero())).unwrap()],
            );
            verdict.require(spun == expected, || {
                json!({
                    "r": r.display(f),
                    "j0": j0.display(f),
                    "spin_dim": spun.dim(),
                    "span_dim": expected.dim(),
                })
            });
        }
        let inf_spin =
            session.spin(&v1, &[v1.f_vector(ThetaElem::infinity(m.zero())).unwrap()]);
        let bottom = bs_subspace(&v1, psgl_core::CarrySet::EMPTY);
        verdict.require(inf_spin == bottom, || {
            json!({"r": r.display(f), "label": "infinity", "spin_dim": inf_spin.dim()})
        });

        if r == m.q_minus_one() {
            // the trivial-character space is the direct sum of the full-span
            // bottom piece and the line through f_0 + f_inf - f_{q-1}
            let handle = session.handle(&v1);
            let f0 = v1.f_vector(ThetaElem::finite(m.zero(), m.zero())).unwrap();
            let finf = v1.f_vector(ThetaElem::infinity(m.zero())).unwrap();
            let ftop = v1.f_vector(ThetaElem::finite(m.q_minus_one(), m.zero())).unwrap();
            let gen: Vec<Fq> = (0..v1.dim())
                .map(|i| k.sub(k.add(f0[i], finf[i]), ftop[i]))
                .collect();
            let line = session.spin(&v1, &[gen]);
            verdict.require(line.dim() == 1, || {
                json!({"r": r.display(f), "piece": "line", "dim": line.dim()})
            });
            verdict.require(session.is_stable(&v1, &bottom), || {
                json!({"r": r.display(f), "piece": "bottom", "reason": "not stable"})
            });
            let sum = bottom.sum(k, &line);
            let meet = bottom.intersect(k, &line);
            verdict.require(sum.dim() == v1.dim() && meet.dim() == 0, || {
                json!({"r": r.display(f), "sum": sum.dim(), "intersection": meet.dim()})
            });
            // identify both summands
            let trivial = SerreWeight::new(&m, m.zero(), &vec![0u8; f]);
            let steinberg =
                SerreWeight::new(&m, m.zero(), &vec![(p - 1) as u8; f]);
            let line_handle = handle.submodule(&line).unwrap();
            let bottom_handle = handle.submodule(&bottom).unwrap();
            verdict.require(
                identify_weight(&line_handle) == Ok(trivial),
                || json!({"r": r.display(f), "piece": "line", "reason": "wrong weight"}),
            );
            verdict.require(
                identify_weight(&bottom_handle) == Ok(steinberg),
                || json!({"r": r.display(f), "piece": "bottom", "reason": "wrong weight"}),
            );
        }
    }
    verdict.note(json!({"spins_checked": spins}));
    verdict.into_report("tame-base", json!({"p": p, "f": f}), start.elapsed())
}

/// Convenience used by other checks: the span of the whole rank-one space.
pub fn full_space(session: &Session, v1: &psgl_core::RepSpace) -> Subspace {
    let mut sub = Subspace::zero(v1.dim());
    for &l in v1.f_labels() {
        sub.insert(session.field.as_ref(), &v1.f_vector(l).unwrap());
    }
    sub
}
