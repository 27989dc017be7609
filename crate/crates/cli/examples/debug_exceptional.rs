use psgl_cli::session::Session;
use psgl_core::linalg::{hom_space, Subspace};
use psgl_core::weights::{admissible_types, leq_r_closed, r_minus_2gamma, ThetaElem};
use psgl_core::{Fq, Variant};

fn main() {
    for (p, f) in [(5u64, 1usize), (3, 2)] {
        let session = Session::new(p, f, Variant::EqualChar).unwrap();
        let m = session.monoid;
        let k = session.field.clone();
        for r in m.enumerate().skip(1) {
            let space = session.space(2, r);
            let handle = session.handle(&space);
            let types = admissible_types(&m, r);
            let models = session.weight_models(r).unwrap();
            for gamma in m.enumerate() {
                if r_minus_2gamma(&m, r, gamma) != m.q_minus_one() {
                    continue;
                }
                // corrected generator: f0 + (-1)^gamma finf - ftop
                let f0 = space.f_vector(ThetaElem::finite(m.zero(), gamma)).unwrap();
                let finf = space.f_vector(ThetaElem::infinity(gamma)).unwrap();
                let ftop = space.f_vector(ThetaElem::finite(m.q_minus_one(), gamma)).unwrap();
                let sign = if gamma.is_odd(p) { k.neg(k.one()) } else { k.one() };
                let h: Vec<Fq> = (0..space.dim())
                    .map(|i| k.sub(k.add(f0[i], k.mul(sign, finf[i])), ftop[i]))
                    .collect();
                let spun = session.spin(&space, &[h]);
                // JH content: compare with spans of types; compute hom-cosocle
                let full = psgl_core::CarrySet::full(f);
                let target = psgl_core::weights::RamType::new(full, gamma);
                let downset_dim: u64 = types
                    .iter()
                    .filter(|&&t| leq_r_closed(&m, t, target, r))
                    .map(|&t| session.type_weight(t, r).dimension(f))
                    .sum();
                let l_empty = session
                    .type_weight(psgl_core::weights::RamType::new(psgl_core::CarrySet::EMPTY, gamma), r)
                    .dimension(f);
                let sub = handle.submodule(&spun).unwrap();
                let mut cosocle: Vec<String> = Vec::new();
                for (w, model) in &models {
                    let d = hom_space(&sub, model).unwrap().len();
                    if d > 0 {
                        cosocle.push(format!("{}^{}", w.display(&m), d));
                    }
                }
                // which type-spans are inside
                let contained: Vec<String> = types
                    .iter()
                    .filter(|&&t| spun.contains_subspace(&k, &session.vtheta(&space, t)))
                    .map(|&t| t.display(&m))
                    .collect();
                println!(
                    "p={p} f={f} r={} gamma={}: spin dim {} (paper formula {}), cosocle {:?}, contains {:?}",
                    r.to_integer(p), gamma.display(f), spun.dim(),
                    downset_dim - l_empty, cosocle, contained
                );
            }
        }
        let _ = Subspace::zero(1);
    }
}
