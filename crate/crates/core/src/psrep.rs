//! The induced representations `V_{n,r}` for `n <= 2`.
//!
//! The space is modelled on the delta basis indexed by the left coset
//! representatives of the upper-triangular subgroup; the group acts by
//! factoring `g * xi` back into a representative times an upper-triangular
//! part and applying the inducing character.  Because the action permutes the
//! delta basis up to scalars, every group element acts by a monomial map.
//!
//! The alternative basis of weighted sums (the `f`-basis) is materialised as
//! explicit vectors, and the printed closed-form actions of the Weyl element,
//! the `1 + d pi` diagonals, the lower unitriangulars and the upper
//! unitriangulars are provided as oracles against the generic action; they
//! never feed the main computation.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, string::String, vec};
use core::fmt;

use crate::gf::{FieldSpec, Fq};
use crate::gl2::{chi_r, coset_factor, CosetRep, Mat2};
use crate::nmonoid::{NClass, NMonoid};
use crate::ring2::{RingSpec, Variant};
use crate::weights::{leq_r_closed, r_minus_2gamma, upsilon, RamType, ThetaElem, UnramTheta};

/// Coefficient vector over the delta basis.
pub type RepVector = Vec<Fq>;

/// A coset label; identical to the coset representatives of the matrix group.
pub type CosetLabel = CosetRep;

/// A label of the weighted-sum basis; for `n = 1` the second component is
/// fixed to zero.
pub type FLabel = ThetaElem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepError {
    /// Label outside the index set of this space.
    BadLabel,
    /// Operation requires the other ring variant.
    WrongVariant,
    /// Operation defined only at this level `n`.
    WrongLevel,
}

impl fmt::Display for RepError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepError::BadLabel => write!(out, "label outside the index set"),
            RepError::WrongVariant => write!(out, "operation requires the other ring variant"),
            RepError::WrongLevel => write!(out, "operation not defined at this level n"),
        }
    }
}

/// A group element acts on the delta basis by relabelling and scaling; this
/// is its complete description.
#[derive(Clone, Debug)]
pub struct ActionMap {
    pub target: Vec<usize>,
    pub scale: Vec<Fq>,
}

impl ActionMap {
    pub fn apply(&self, k: &FieldSpec, v: &[Fq]) -> RepVector {
        let mut out = vec![k.zero(); v.len()];
        for (j, &c) in v.iter().enumerate() {
            if c != k.zero() {
                let t = self.target[j];
                out[t] = k.add(out[t], k.mul(c, self.scale[j]));
            }
        }
        out
    }
}

/// The principal series `V_{n,r}` for `n` in `{1, 2}`.
pub struct RepSpace {
    pub ring: Arc<RingSpec>,
    pub monoid: NMonoid,
    pub n: u8,
    pub r: NClass,
    labels: Vec<CosetLabel>,
    label_index: BTreeMap<CosetLabel, usize>,
    f_labels: Vec<FLabel>,
    f_label_index: BTreeMap<FLabel, usize>,
    /// `f`-basis vectors by `f_labels` order.
    f_vectors: Vec<RepVector>,
}

impl RepSpace {
    pub fn new(ring: Arc<RingSpec>, n: u8, r: NClass) -> RepSpace {
        assert!(n == 1 || n == 2);
        assert!(!r.is_zero(), "the inducing exponent r is a non-zero class");
        let k = ring.field.clone();
        let monoid = NMonoid::new(k.p(), k.f());
        let mut labels = Vec::new();
        if n == 2 {
            for lam0 in k.enumerate() {
                for lam1 in k.enumerate() {
                    labels.push(CosetRep::First { lam0, lam1 });
                }
            }
            for mu in k.enumerate() {
                labels.push(CosetRep::Second { mu });
            }
        } else {
            for lam0 in k.enumerate() {
                labels.push(CosetRep::First { lam0, lam1: k.zero() });
            }
            labels.push(CosetRep::Second { mu: k.zero() });
        }
        let label_index = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

        let mut f_labels = Vec::new();
        if n == 2 {
            for j1 in monoid.enumerate() {
                for j0 in monoid.enumerate() {
                    f_labels.push(ThetaElem::finite(j0, j1));
                }
                f_labels.push(ThetaElem::infinity(j1));
            }
        } else {
            for j0 in monoid.enumerate() {
                f_labels.push(ThetaElem::finite(j0, monoid.zero()));
            }
            f_labels.push(ThetaElem::infinity(monoid.zero()));
        }
        let f_label_index = f_labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

        let mut space = RepSpace {
            ring,
            monoid,
            n,
            r,
            labels,
            label_index,
            f_labels,
            f_label_index,
            f_vectors: Vec::new(),
        };
        space.f_vectors = space.f_labels.iter().map(|&l| space.build_f_vector(l)).collect();
        space
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.ring.field
    }

    pub fn labels(&self) -> &[CosetLabel] {
        &self.labels
    }

    pub fn label_index(&self, label: CosetLabel) -> Option<usize> {
        self.label_index.get(&label).copied()
    }

    pub fn f_labels(&self) -> &[FLabel] {
        &self.f_labels
    }

    pub fn f_label_index(&self, label: FLabel) -> Option<usize> {
        self.f_label_index.get(&label).copied()
    }

    pub fn zero_vector(&self) -> RepVector {
        vec![self.field().zero(); self.dim()]
    }

    /// The monomial description of the action of `g`.
    pub fn action_map(&self, g: &Mat2) -> ActionMap {
        let mut target = Vec::with_capacity(self.dim());
        let mut scale = Vec::with_capacity(self.dim());
        for &label in &self.labels {
            let (t, s) = if self.n == 2 {
                self.act_label_two(g, label)
            } else {
                self.act_label_one(g, label)
            };
            target.push(self.label_index[&t]);
            scale.push(s);
        }
        ActionMap { target, scale }
    }

    fn act_label_two(&self, g: &Mat2, label: CosetLabel) -> (CosetLabel, Fq) {
        let ring = &*self.ring;
        let prod = g.mul(ring, &label.matrix(ring));
        let (rep, b) = coset_factor(ring, &prod).expect("g and xi are invertible");
        let chi = chi_r(ring, &b, self.r).expect("factor is upper-triangular");
        (rep, chi)
    }

    /// For `n = 1` the action runs over the residue field.
    fn act_label_one(&self, g: &Mat2, label: CosetLabel) -> (CosetLabel, Fq) {
        let k = self.field();
        let (ga, gb, gc, gd) = (g.a.a0, g.b.a0, g.c.a0, g.d.a0);
        // multiply the residue of g by the residue of the representative
        let (a, b, c, d) = match label {
            CosetRep::First { lam0, .. } => {
                (k.add(k.mul(ga, lam0), gb), ga, k.add(k.mul(gc, lam0), gd), gc)
            }
            CosetRep::Second { .. } => (ga, gb, gc, gd),
        };
        if c != k.zero() {
            let lam = k.mul(a, k.inv(c).unwrap());
            // xi^{-1} [[a, b], [c, d]] = [[c, d], [0, b - lam d]]
            let d0 = k.sub(b, k.mul(lam, d));
            (CosetRep::First { lam0: lam, lam1: k.zero() }, k.pow_class(d0, self.r))
        } else {
            (CosetRep::Second { mu: k.zero() }, k.pow_class(d, self.r))
        }
    }

    pub fn act(&self, g: &Mat2, v: &[Fq]) -> RepVector {
        self.action_map(g).apply(self.field(), v)
    }

    fn build_f_vector(&self, label: FLabel) -> RepVector {
        let k = self.field();
        let mut out = self.zero_vector();
        match label.j0 {
            Some(j0) => {
                for (i, &l) in self.labels.iter().enumerate() {
                    if let CosetRep::First { lam0, lam1 } = l {
                        let c0 = k.pow_class(lam0, j0);
                        let c1 =
                            if self.n == 2 { k.pow_class(lam1, label.j1) } else { k.one() };
                        out[i] = k.mul(c0, c1);
                    }
                }
                out
            }
            None => {
                let zero_label = ThetaElem::finite(self.monoid.zero(), label.j1);
                let base = self.build_f_vector(zero_label);
                self.act(&Mat2::w(&self.ring), &base)
            }
        }
    }

    /// The basis vector of weighted sums attached to `label`.
    pub fn f_vector(&self, label: FLabel) -> Result<RepVector, RepError> {
        let idx = self.f_label_index.get(&label).ok_or(RepError::BadLabel)?;
        Ok(self.f_vectors[*idx].clone())
    }

    /// Coordinates of `v` in the `f`-basis (always defined, as the weighted
    /// sums form a basis).
    pub fn to_f_coords(&self, v: &[Fq]) -> Vec<Fq> {
        let k = self.field();
        // Gaussian solve against the f-vector matrix, keeping the transform.
        let dim = self.dim();
        let mut pivots: Vec<usize> = Vec::new();
        let mut echelon: Vec<(RepVector, RepVector)> = Vec::new();
        for (i, fvec) in self.f_vectors.iter().enumerate() {
            let mut row = fvec.clone();
            let mut t = vec![k.zero(); dim];
            t[i] = k.one();
            for (e, &p) in echelon.iter().zip(&pivots) {
                let c = row[p];
                if c != k.zero() {
                    for x in 0..dim {
                        row[x] = k.sub(row[x], k.mul(c, e.0[x]));
                        t[x] = k.sub(t[x], k.mul(c, e.1[x]));
                    }
                }
            }
            if let Some(p) = row.iter().position(|&c| c != k.zero()) {
                let inv = k.inv(row[p]).unwrap();
                for x in 0..dim {
                    row[x] = k.mul(row[x], inv);
                    t[x] = k.mul(t[x], inv);
                }
                pivots.push(p);
                echelon.push((row, t));
            }
        }
        assert_eq!(echelon.len(), dim, "the weighted sums form a basis");
        let mut residual: RepVector = v.to_vec();
        let mut coords = vec![k.zero(); dim];
        for ((row, t), &p) in echelon.iter().zip(&pivots) {
            let c = residual[p];
            if c != k.zero() {
                for x in 0..dim {
                    residual[x] = k.sub(residual[x], k.mul(c, row[x]));
                    coords[x] = k.add(coords[x], k.mul(c, t[x]));
                }
            }
        }
        assert!(residual.iter().all(|&c| c == k.zero()));
        coords
    }

    /// The closed form of the Weyl action: each basis label goes to a signed
    /// basis label.
    pub fn w_explicit(&self, label: FLabel) -> Result<(Fq, FLabel), RepError> {
        let k = self.field();
        let m = &self.monoid;
        if !self.f_label_index.contains_key(&label) {
            return Err(RepError::BadLabel);
        }
        Ok(match label.j0 {
            None => (k.one(), ThetaElem::finite(m.zero(), label.j1)),
            Some(j0) if j0.is_zero() => (k.one(), ThetaElem::infinity(label.j1)),
            Some(j0) => {
                let mirror = m
                    .sub_group(r_minus_2gamma(m, self.r, label.j1), j0)
                    .expect("non-zero class");
                let parity = (self.r.to_integer(m.p) + label.j1.to_integer(m.p)) % 2;
                let sign = if parity == 1 { k.neg(k.one()) } else { k.one() };
                (sign, ThetaElem::finite(mirror, label.j1))
            }
        })
    }

    fn accumulate_f(&self, out: &mut RepVector, coeff: Fq, label: FLabel) {
        let k = self.field();
        if coeff == k.zero() {
            return;
        }
        let fv = &self.f_vectors[self.f_label_index[&label]];
        for (x, &c) in fv.iter().enumerate() {
            out[x] = k.add(out[x], k.mul(coeff, c));
        }
    }

    /// Closed form of `diag(1, 1 + [d] pi)` on a finite label (any variant):
    /// the sum of `binom(j1, j1') d^{j1'} f_{(j0 + j1', j1 .- j1')}`.
    pub fn d2_explicit(&self, d: Fq, label: FLabel) -> Result<RepVector, RepError> {
        let (j0, j1) = match label.j0 {
            Some(j0) if self.n == 2 => (j0, label.j1),
            _ => return Err(RepError::BadLabel),
        };
        let k = self.field();
        let m = self.monoid;
        let mut out = self.zero_vector();
        for j1p in m.subclasses(j1) {
            let coeff =
                k.mul(k.from_int(m.binom_mod_p(j1, j1p) as i64), k.pow_class(d, j1p));
            let target = ThetaElem::finite(m.add(j0, j1p), m.digit_sub(j1, j1p));
            self.accumulate_f(&mut out, coeff, target);
        }
        Ok(out)
    }

    /// Closed form of `[[1, 0], [c pi, 1]]` on a finite label (any variant):
    /// the sum of `binom(j1, j1') c^{j1'} f_{(j0 + 2 j1', j1 .- j1')}`.
    pub fn lbar_explicit(&self, c: Fq, label: FLabel) -> Result<RepVector, RepError> {
        let (j0, j1) = match label.j0 {
            Some(j0) if self.n == 2 => (j0, label.j1),
            _ => return Err(RepError::BadLabel),
        };
        let k = self.field();
        let m = self.monoid;
        let mut out = self.zero_vector();
        for j1p in m.subclasses(j1) {
            let coeff =
                k.mul(k.from_int(m.binom_mod_p(j1, j1p) as i64), k.pow_class(c, j1p));
            let target = ThetaElem::finite(m.add(j0, m.add(j1p, j1p)), m.digit_sub(j1, j1p));
            self.accumulate_f(&mut out, coeff, target);
        }
        Ok(out)
    }

    /// Closed form of `[[1, b], [0, 1]]`, `b = [b0] + [b1] pi`, on a finite
    /// label in the equal-characteristic variant: the double binomial
    /// expansion into basis labels.
    pub fn u2_explicit_ramified(
        &self,
        b0: Fq,
        b1: Fq,
        label: FLabel,
    ) -> Result<RepVector, RepError> {
        if self.ring.variant != Variant::EqualChar {
            return Err(RepError::WrongVariant);
        }
        let (j0, j1) = match label.j0 {
            Some(j0) if self.n == 2 => (j0, label.j1),
            _ => return Err(RepError::BadLabel),
        };
        let k = self.field();
        let m = self.monoid;
        let mut out = self.zero_vector();
        for j0p in m.subclasses(j0) {
            for j1p in m.subclasses(j1) {
                let binoms = m.binom_mod_p(j0, j0p) * m.binom_mod_p(j1, j1p) % m.p;
                let coeff = k.mul(
                    k.from_int(binoms as i64),
                    k.mul(
                        k.pow_class(k.neg(b0), m.digit_sub(j0, j0p)),
                        k.pow_class(k.neg(b1), m.digit_sub(j1, j1p)),
                    ),
                );
                self.accumulate_f(&mut out, coeff, ThetaElem::finite(j0p, j1p));
            }
        }
        Ok(out)
    }

    /// Closed form of `[[1, b], [0, 1]]` on the infinity label in the
    /// equal-characteristic variant, in delta coordinates.
    pub fn u2_explicit_ramified_infinity(
        &self,
        b0: Fq,
        b1: Fq,
        j1: NClass,
    ) -> Result<RepVector, RepError> {
        if self.ring.variant != Variant::EqualChar {
            return Err(RepError::WrongVariant);
        }
        if self.n != 2 {
            return Err(RepError::WrongLevel);
        }
        let k = self.field();
        let m = &self.monoid;
        let rm2 = r_minus_2gamma(m, self.r, j1);
        let parity = (self.r.to_integer(m.p) + j1.to_integer(m.p)) % 2;
        let sign = if parity == 1 { k.neg(k.one()) } else { k.one() };
        let mut out = self.zero_vector();
        for (i, &l) in self.labels.iter().enumerate() {
            out[i] = match l {
                CosetRep::First { lam0, lam1 } => k.mul(
                    sign,
                    k.mul(
                        k.pow_class(k.sub(lam0, b0), rm2),
                        k.pow_class(k.sub(lam1, b1), j1),
                    ),
                ),
                CosetRep::Second { mu } => k.pow_class(mu, j1),
            };
        }
        Ok(out)
    }

    /// Closed form of `[[1, b], [0, 1]]` on a finite label in the Witt
    /// variant, in delta coordinates: the second digit acquires the carry
    /// polynomial evaluated at Frobenius twists.
    pub fn u2_explicit_witt(&self, b0: Fq, b1: Fq, label: FLabel) -> Result<RepVector, RepError> {
        if self.ring.variant != Variant::Witt {
            return Err(RepError::WrongVariant);
        }
        let (j0, j1) = match label.j0 {
            Some(j0) if self.n == 2 => (j0, label.j1),
            _ => return Err(RepError::BadLabel),
        };
        let k = self.field();
        let f = k.f();
        let mut out = self.zero_vector();
        for (i, &l) in self.labels.iter().enumerate() {
            if let CosetRep::First { lam0, lam1 } = l {
                let s = self
                    .ring
                    .witt_s(k.frobenius(lam0, f - 1), k.frobenius(k.neg(b0), f - 1));
                let second = k.add(k.sub(lam1, b1), s);
                out[i] = k.mul(k.pow_class(k.sub(lam0, b0), j0), k.pow_class(second, j1));
            }
        }
        Ok(out)
    }

    /// The labels of the filtration step `beta`: every basis label whose
    /// second component is digit-wise below `beta` (level two only).
    pub fn wbeta_label_set(&self, beta: NClass) -> Result<Vec<FLabel>, RepError> {
        if self.n != 2 {
            return Err(RepError::WrongLevel);
        }
        let m = &self.monoid;
        Ok(self.f_labels.iter().copied().filter(|l| m.leq(l.j1, beta)).collect())
    }

    /// The labels of type at most `theta` (level two, equal characteristic).
    pub fn vtheta_label_set(&self, theta: RamType) -> Result<Vec<FLabel>, RepError> {
        if self.n != 2 {
            return Err(RepError::WrongLevel);
        }
        if self.ring.variant != Variant::EqualChar {
            return Err(RepError::WrongVariant);
        }
        let m = &self.monoid;
        Ok(self
            .f_labels
            .iter()
            .copied()
            .filter(|&l| leq_r_closed(m, upsilon(m, l, self.r), theta, self.r))
            .collect())
    }

    /// The generator of the distinguished cyclic submodule in the unramified
    /// variant: the vector at label `(0, 1 + p + ... + p^{f-1})`.
    pub fn m_chi_generator(&self) -> Result<RepVector, RepError> {
        if self.ring.variant != Variant::Witt {
            return Err(RepError::WrongVariant);
        }
        if self.n != 2 {
            return Err(RepError::WrongLevel);
        }
        let m = &self.monoid;
        let all_ones = m.p_of_set(crate::nmonoid::CarrySet::full(m.f));
        self.f_vector(ThetaElem::finite(m.zero(), all_ones))
    }

    /// The vector attached to an unramified index `(J, I)`.
    pub fn f_theta_vector(&self, theta: UnramTheta) -> Result<RepVector, RepError> {
        if self.ring.variant != Variant::Witt {
            return Err(RepError::WrongVariant);
        }
        if self.n != 2 {
            return Err(RepError::WrongLevel);
        }
        let label = crate::weights::unram_f_index(&self.monoid, theta, self.r);
        self.f_vector(label)
    }

    pub fn display_label(&self, label: CosetLabel) -> String {
        let k = self.field();
        match label {
            CosetRep::First { lam0, lam1 } if self.n == 2 => {
                format!("[{}+{}pi:1]", k.display(lam0), k.display(lam1))
            }
            CosetRep::First { lam0, .. } => format!("[{}:1]", k.display(lam0)),
            CosetRep::Second { mu } if self.n == 2 => format!("[1:{}pi]", k.display(mu)),
            CosetRep::Second { .. } => String::from("[1:0]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2::GeneratorSet;
    use crate::ring2::R2Elem;
    use rand_core::{RngCore, SeedableRng};

    fn space(p: u64, f: usize, variant: Variant, n: u8, r: u64) -> RepSpace {
        let field = Arc::new(FieldSpec::new(p, f).unwrap());
        let ring = Arc::new(RingSpec::new(field, variant));
        let m = NMonoid::new(p, f);
        RepSpace::new(ring, n, m.from_integer(r))
    }

    #[test]
    fn dimensions() {
        let v = space(3, 1, Variant::EqualChar, 2, 1);
        assert_eq!(v.dim(), 12);
        assert_eq!(v.f_labels().len(), 12);
        let v1 = space(3, 1, Variant::EqualChar, 1, 1);
        assert_eq!(v1.dim(), 4);
        let v9 = space(3, 2, Variant::Witt, 2, 5);
        assert_eq!(v9.dim(), 90);
    }

    #[test]
    fn identity_acts_trivially_and_action_is_homomorphic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for variant in [Variant::EqualChar, Variant::Witt] {
            for n in [1u8, 2] {
                let v = space(3, 1, variant, n, 1);
                let k = v.field();
                let id = Mat2::identity(&v.ring);
                let mut vec = v.zero_vector();
                for c in vec.iter_mut() {
                    *c = Fq((rng.next_u64() % k.q()) as u16);
                }
                assert_eq!(v.act(&id, &vec), vec);
                let gens = GeneratorSet::standard(&v.ring);
                for g in &gens.gens {
                    for h in &gens.gens {
                        let gh = g.mat.mul(&v.ring, &h.mat);
                        let lhs = v.act(&gh, &vec);
                        let rhs = v.act(&g.mat, &v.act(&h.mat, &vec));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn f_basis_has_full_rank_and_round_trips() {
        for (p, f, n) in [(3u64, 1usize, 2u8), (3, 1, 1), (5, 1, 2), (3, 2, 1)] {
            let v = space(p, f, Variant::EqualChar, n, 1);
            let k = v.field();
            // to_f_coords asserts full rank internally; verify a round trip
            for (i, label) in v.f_labels().iter().enumerate() {
                let fv = v.f_vector(*label).unwrap();
                let coords = v.to_f_coords(&fv);
                for (j, &c) in coords.iter().enumerate() {
                    assert_eq!(c != k.zero(), i == j);
                }
            }
        }
    }

    #[test]
    fn torus_eigenvalues() {
        // t f_j = a^r (a^{-1} d)^{j0 + j1} f_j on every basis label
        for variant in [Variant::EqualChar, Variant::Witt] {
            let v = space(3, 2, variant, 2, 5);
            let k = v.field();
            let m = &v.monoid;
            let g = k.multiplicative_generator();
            for (a, d) in [(g, k.one()), (k.one(), g), (g, g)] {
                let t = Mat2::diag(&v.ring, v.ring.teichmueller(a), v.ring.teichmueller(d));
                for &label in v.f_labels() {
                    let fv = v.f_vector(label).unwrap();
                    let image = v.act(&t, &fv);
                    let eigen = match label.j0 {
                        Some(j0) => k.mul(
                            k.pow_class(a, v.r),
                            k.pow_class(k.mul(k.inv(a).unwrap(), d), m.add(j0, label.j1)),
                        ),
                        None => k.mul(
                            k.pow_class(d, v.r),
                            k.pow_class(k.mul(a, k.inv(d).unwrap()), label.j1),
                        ),
                    };
                    let expected: Vec<Fq> = fv.iter().map(|&c| k.mul(eigen, c)).collect();
                    assert_eq!(image, expected);
                }
            }
        }
    }

    #[test]
    fn center_acts_by_residue_power() {
        let v = space(3, 1, Variant::Witt, 2, 1);
        let k = v.field();
        let z = Mat2::diag(&v.ring, R2Elem::new(Fq(2), Fq(1)), R2Elem::new(Fq(2), Fq(1)));
        for &label in v.f_labels() {
            let fv = v.f_vector(label).unwrap();
            let image = v.act(&z, &fv);
            let eigen = k.pow_class(Fq(2), v.r);
            let expected: Vec<Fq> = fv.iter().map(|&c| k.mul(eigen, c)).collect();
            assert_eq!(image, expected);
        }
    }

    #[test]
    fn weyl_oracle_examples() {
        let v = space(3, 1, Variant::EqualChar, 2, 1);
        let m = v.monoid;
        let k = v.field();
        // w f_{(0, j1)} = f_{(inf, j1)}
        let (s, l) =
            v.w_explicit(ThetaElem::finite(m.zero(), m.from_integer(1))).unwrap();
        assert_eq!(s, k.one());
        assert_eq!(l, ThetaElem::infinity(m.from_integer(1)));
        // r = 1: w f_{(1, 0)} = (-1)^{1} f_{(r - 1, 0)} = -f_{(2, 0)}
        let (s, l) =
            v.w_explicit(ThetaElem::finite(m.from_integer(1), m.zero())).unwrap();
        assert_eq!(s, k.neg(k.one()));
        assert_eq!(l, ThetaElem::finite(m.from_integer(2), m.zero()));
    }

    #[test]
    fn oracles_match_generic_action() {
        // exhaustive closed-form comparison on small spaces of each variant
        for (p, f, variant) in [
            (3u64, 1usize, Variant::EqualChar),
            (3, 1, Variant::Witt),
            (3, 2, Variant::EqualChar),
        ] {
            let v = space(p, f, variant, 2, 1);
            let k = v.field();
            let w = Mat2::w(&v.ring);
            for &label in v.f_labels() {
                let image = v.act(&w, &v.f_vector(label).unwrap());
                let (sign, target) = v.w_explicit(label).unwrap();
                let fv = v.f_vector(target).unwrap();
                let expected: Vec<Fq> = fv.iter().map(|&c| k.mul(sign, c)).collect();
                assert_eq!(image, expected, "w at {label:?} ({variant:?})");
            }
            for x in k.enumerate() {
                let d2 = Mat2::diag_one_pi(&v.ring, x);
                let lb = Mat2::lower_pi(&v.ring, x);
                for &label in v.f_labels() {
                    if label.j0.is_none() {
                        continue;
                    }
                    let fv = v.f_vector(label).unwrap();
                    assert_eq!(
                        v.act(&d2, &fv),
                        v.d2_explicit(x, label).unwrap(),
                        "diag(1,1+[x]pi) at {label:?} ({variant:?})"
                    );
                    assert_eq!(
                        v.act(&lb, &fv),
                        v.lbar_explicit(x, label).unwrap(),
                        "lower at {label:?} ({variant:?})"
                    );
                }
            }
            for b0 in k.enumerate() {
                for b1 in k.enumerate() {
                    let u = Mat2::upper(&v.ring, R2Elem::new(b0, b1));
                    for &label in v.f_labels() {
                        let fv = v.f_vector(label).unwrap();
                        match (label.j0, variant) {
                            (Some(_), Variant::EqualChar) => {
                                assert_eq!(
                                    v.act(&u, &fv),
                                    v.u2_explicit_ramified(b0, b1, label).unwrap()
                                );
                            }
                            (Some(_), Variant::Witt) => {
                                assert_eq!(
                                    v.act(&u, &fv),
                                    v.u2_explicit_witt(b0, b1, label).unwrap()
                                );
                            }
                            (None, Variant::EqualChar) => {
                                assert_eq!(
                                    v.act(&u, &fv),
                                    v.u2_explicit_ramified_infinity(b0, b1, label.j1).unwrap()
                                );
                            }
                            (None, Variant::Witt) => {}
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn wbeta_and_vtheta_label_sets() {
        let v = space(3, 1, Variant::EqualChar, 2, 1);
        let m = v.monoid;
        // the top filtration step contains every label
        assert_eq!(v.wbeta_label_set(m.q_minus_one()).unwrap().len(), v.dim());
        assert_eq!(v.wbeta_label_set(m.zero()).unwrap().len(), 4); // q + 1
        // the minimal type contains the labels of empty carry set at level 0
        let bottom = RamType::new(crate::nmonoid::CarrySet::EMPTY, m.zero());
        let set = v.vtheta_label_set(bottom).unwrap();
        for l in &set {
            assert_eq!(l.j1, m.zero());
        }
        assert!(set.contains(&ThetaElem::infinity(m.zero())));
        assert!(set.contains(&ThetaElem::finite(m.zero(), m.zero())));
    }

    #[test]
    fn unramified_generators_require_witt() {
        let v = space(7, 1, Variant::EqualChar, 2, 3);
        assert!(v.m_chi_generator().is_err());
        let vw = space(7, 1, Variant::Witt, 2, 3);
        let gen = vw.m_chi_generator().unwrap();
        assert_eq!(
            gen,
            vw.f_vector(ThetaElem::finite(vw.monoid.zero(), vw.monoid.from_integer(1)))
                .unwrap()
        );
    }
}
