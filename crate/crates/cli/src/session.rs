//! Shared construction helpers: one `Session` per `(p, f, variant)` wires the
//! field, the ring, the digit monoid and the standard generator set together,
//! and builds representation spaces, module handles, label-span subspaces and
//! explicit weight models on demand.

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{anyhow, Result};
use psgl_core::gf::FieldSpec;
use psgl_core::linalg::{weight_model, ModuleHandle, Subspace};
use psgl_core::nmonoid::NMonoid;
use psgl_core::psrep::{ActionMap, RepSpace};
use psgl_core::weights::{
    admissible_types, r_minus_2gamma, sigma_j, RamType, SerreWeight, ThetaElem,
};
use psgl_core::{GeneratorSet, NClass, RingSpec, Variant};

pub struct Session {
    pub field: Arc<FieldSpec>,
    pub ring: Arc<RingSpec>,
    pub monoid: NMonoid,
    pub gens: GeneratorSet,
}

impl Session {
    pub fn new(p: u64, f: usize, variant: Variant) -> Result<Session> {
        let field = Arc::new(FieldSpec::new(p, f).map_err(|e| anyhow!("{e}"))?);
        let ring = Arc::new(RingSpec::new(field.clone(), variant));
        let gens = GeneratorSet::standard(&ring);
        let monoid = NMonoid::new(p, f);
        Ok(Session { field, ring, monoid, gens })
    }

    pub fn space(&self, n: u8, r: NClass) -> RepSpace {
        RepSpace::new(self.ring.clone(), n, r)
    }

    pub fn handle(&self, space: &RepSpace) -> ModuleHandle {
        ModuleHandle::from_rep_space(space, &self.gens)
    }

    pub fn action_maps(&self, space: &RepSpace) -> Vec<ActionMap> {
        self.gens.gens.iter().map(|g| space.action_map(&g.mat)).collect()
    }

    /// Spin closure inside a representation space, using the monomial maps.
    pub fn spin(&self, space: &RepSpace, seeds: &[Vec<psgl_core::Fq>]) -> Subspace {
        let k = space.field();
        let maps = self.action_maps(space);
        let mut sub = Subspace::zero(space.dim());
        let mut work: Vec<Vec<psgl_core::Fq>> = seeds.to_vec();
        while let Some(v) = work.pop() {
            if let Some(row) = sub.insert(k, &v) {
                for map in &maps {
                    work.push(map.apply(k, &row));
                }
            }
        }
        sub
    }

    /// Whether a subspace of a representation space is stable under every
    /// generator.
    pub fn is_stable(&self, space: &RepSpace, sub: &Subspace) -> bool {
        let k = space.field();
        let maps = self.action_maps(space);
        sub.rows()
            .iter()
            .all(|row| maps.iter().all(|map| sub.contains(k, &map.apply(k, row))))
    }

    /// The span of a list of basis labels.
    pub fn label_span(&self, space: &RepSpace, labels: &[ThetaElem]) -> Subspace {
        let k = space.field();
        let mut sub = Subspace::zero(space.dim());
        for &l in labels {
            sub.insert(k, &space.f_vector(l).expect("valid label"));
        }
        sub
    }

    /// The subspace spanned by the labels of type at most `theta`.
    pub fn vtheta(&self, space: &RepSpace, theta: RamType) -> Subspace {
        self.label_span(space, &space.vtheta_label_set(theta).expect("level two"))
    }

    /// The filtration subspace at `beta`.
    pub fn wbeta(&self, space: &RepSpace, beta: NClass) -> Subspace {
        self.label_span(space, &space.wbeta_label_set(beta).expect("level two"))
    }

    /// The weight attached to an admissible type.
    pub fn type_weight(&self, theta: RamType, r: NClass) -> SerreWeight {
        let m = &self.monoid;
        let s = r_minus_2gamma(m, r, theta.gamma);
        let base = sigma_j(m, s, theta.set);
        SerreWeight::new(
            m,
            m.add(theta.gamma, base.twist()),
            base.sym_digits(m.f),
        )
    }

    /// Explicit model of the weight of an admissible type, as a twisted
    /// subquotient of the rank-one space at exponent `r - 2 gamma`.
    pub fn type_model(&self, theta: RamType, r: NClass) -> Result<ModuleHandle> {
        let s = r_minus_2gamma(&self.monoid, r, theta.gamma);
        let v1 = self.space(1, s);
        weight_model(&v1, &self.gens, theta.gamma, theta.set).map_err(|e| anyhow!("{e}"))
    }

    /// One model per distinct weight among the admissible types of `r`,
    /// keyed by the weight.
    pub fn weight_models(&self, r: NClass) -> Result<BTreeMap<SerreWeight, ModuleHandle>> {
        let mut out = BTreeMap::new();
        for theta in admissible_types(&self.monoid, r) {
            let w = self.type_weight(theta, r);
            if !out.contains_key(&w) {
                out.insert(w, self.type_model(theta, r)?);
            }
        }
        Ok(out)
    }
}

/// Parses and canonicalizes a character exponent: integers reduce modulo
/// `q - 1` with `0` mapping to `q - 1` (exponents of the residue-unit
/// character are non-zero classes).
pub fn canonical_r(m: &NMonoid, raw: u64) -> NClass {
    let n = m.q() - 1;
    let rep = (raw + n - 1) % n + 1;
    m.from_integer(rep)
}
