//! `GL2` over the ring `O/m^2`: matrices, the named subgroup elements, a
//! standard generating set, and factorisation through the left coset
//! representatives of the upper-triangular subgroup.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use crate::gf::Fq;
use crate::nmonoid::NClass;
use crate::ring2::{R2Elem, RingSpec};

/// A 2x2 matrix over `O/m^2`, row major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat2 {
    pub a: R2Elem,
    pub b: R2Elem,
    pub c: R2Elem,
    pub d: R2Elem,
}

/// Errors from matrix and coset computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gl2Error {
    /// Inverse of a matrix whose determinant is not a unit.
    NotInvertible,
    /// An operation that requires an upper-triangular matrix.
    NotTriangular,
}

impl fmt::Display for Gl2Error {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gl2Error::NotInvertible => write!(out, "matrix is not invertible"),
            Gl2Error::NotTriangular => write!(out, "matrix is not upper-triangular"),
        }
    }
}

impl Mat2 {
    pub fn new(a: R2Elem, b: R2Elem, c: R2Elem, d: R2Elem) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn identity(ring: &RingSpec) -> Mat2 {
        Mat2::new(ring.one(), ring.zero(), ring.zero(), ring.one())
    }

    /// The Weyl element `w = [[0, 1], [1, 0]]`.
    pub fn w(ring: &RingSpec) -> Mat2 {
        Mat2::new(ring.zero(), ring.one(), ring.one(), ring.zero())
    }

    pub fn diag(ring: &RingSpec, x: R2Elem, y: R2Elem) -> Mat2 {
        Mat2::new(x, ring.zero(), ring.zero(), y)
    }

    /// `[[1, b], [0, 1]]`.
    pub fn upper(ring: &RingSpec, b: R2Elem) -> Mat2 {
        Mat2::new(ring.one(), b, ring.zero(), ring.one())
    }

    /// `[[1, 0], [c pi, 1]]` with `c` in the residue field.
    pub fn lower_pi(ring: &RingSpec, c: Fq) -> Mat2 {
        Mat2::new(
            ring.one(),
            ring.zero(),
            R2Elem::new(ring.field.zero(), c),
            ring.one(),
        )
    }

    /// `[[1, 0], [0, 1 + d pi]]` with `d` in the residue field.
    pub fn diag_one_pi(ring: &RingSpec, d: Fq) -> Mat2 {
        Mat2::diag(ring, ring.one(), R2Elem::new(ring.field.one(), d))
    }

    pub fn mul(&self, ring: &RingSpec, rhs: &Mat2) -> Mat2 {
        let m = |x: R2Elem, y: R2Elem| ring.mul(x, y);
        Mat2::new(
            ring.add(m(self.a, rhs.a), m(self.b, rhs.c)),
            ring.add(m(self.a, rhs.b), m(self.b, rhs.d)),
            ring.add(m(self.c, rhs.a), m(self.d, rhs.c)),
            ring.add(m(self.c, rhs.b), m(self.d, rhs.d)),
        )
    }

    pub fn det(&self, ring: &RingSpec) -> R2Elem {
        ring.sub(ring.mul(self.a, self.d), ring.mul(self.b, self.c))
    }

    pub fn is_invertible(&self, ring: &RingSpec) -> bool {
        ring.is_unit(self.det(ring))
    }

    pub fn inv(&self, ring: &RingSpec) -> Result<Mat2, Gl2Error> {
        let det = self.det(ring);
        let det_inv = ring.inv(det).map_err(|_| Gl2Error::NotInvertible)?;
        let m = |x: R2Elem| ring.mul(det_inv, x);
        Ok(Mat2::new(m(self.d), m(ring.neg(self.b)), m(ring.neg(self.c)), m(self.a)))
    }

    pub fn is_upper_triangular(&self, ring: &RingSpec) -> bool {
        self.c == ring.zero()
    }

    pub fn display(&self, ring: &RingSpec) -> String {
        format!(
            "[[{}, {}], [{}, {}]]",
            ring.display(self.a),
            ring.display(self.b),
            ring.display(self.c),
            ring.display(self.d)
        )
    }
}

/// Symbolic identity of a generator, shared across all modules built over the
/// same ring so that equivariance constraints can be matched up.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GenTag {
    /// The Weyl element.
    W,
    /// `diag([g], 1)` for the fixed generator `g` of the residue units.
    TorusA,
    /// `diag(1, [g])`.
    TorusD,
    /// `[[1, [x]], [0, 1]]`, `x` the i-th basis element of `k` over `F_p`.
    Upper(u8),
    /// `[[1, [x] pi], [0, 1]]`.
    UpperPi(u8),
    /// `[[1, 0], [0, 1 + [x] pi]]`.
    DiagPi(u8),
}

impl fmt::Display for GenTag {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenTag::W => write!(out, "w"),
            GenTag::TorusA => write!(out, "ta"),
            GenTag::TorusD => write!(out, "td"),
            GenTag::Upper(i) => write!(out, "u{i}"),
            GenTag::UpperPi(i) => write!(out, "upi{i}"),
            GenTag::DiagPi(i) => write!(out, "dpi{i}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub tag: GenTag,
    pub mat: Mat2,
}

/// The standard generating set: the Weyl element, the two torus generators
/// attached to a generator of `k^*`, the upper unitriangular elements over an
/// `F_p`-basis of `k` (constant and `pi`-multiplied), and the `1 + d pi`
/// diagonal elements over the same basis.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub gens: Vec<Generator>,
}

impl GeneratorSet {
    pub fn standard(ring: &RingSpec) -> GeneratorSet {
        let k = &*ring.field;
        let g = k.multiplicative_generator();
        let mut gens = vec![
            Generator { tag: GenTag::W, mat: Mat2::w(ring) },
            Generator {
                tag: GenTag::TorusA,
                mat: Mat2::diag(ring, ring.teichmueller(g), ring.one()),
            },
            Generator {
                tag: GenTag::TorusD,
                mat: Mat2::diag(ring, ring.one(), ring.teichmueller(g)),
            },
        ];
        for i in 0..k.f() {
            // the i-th basis element of k over F_p is the monomial x^i
            let mut coeffs = vec![0u8; k.f()];
            coeffs[i] = 1;
            let x = k.from_coeffs(&coeffs);
            gens.push(Generator {
                tag: GenTag::Upper(i as u8),
                mat: Mat2::upper(ring, ring.teichmueller(x)),
            });
            gens.push(Generator {
                tag: GenTag::UpperPi(i as u8),
                mat: Mat2::upper(ring, R2Elem::new(k.zero(), x)),
            });
            gens.push(Generator { tag: GenTag::DiagPi(i as u8), mat: Mat2::diag_one_pi(ring, x) });
        }
        GeneratorSet { gens }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn tags(&self) -> Vec<GenTag> {
        self.gens.iter().map(|g| g.tag).collect()
    }
}

/// A left coset representative of the upper-triangular subgroup.
///
/// First kind: `[[lam, 1], [1, 0]]` for `lam` running over `O/m^2`;
/// second kind: `[[1, 0], [mu pi, 1]]` for `mu` in the residue field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum CosetRep {
    First { lam0: Fq, lam1: Fq },
    Second { mu: Fq },
}

impl CosetRep {
    pub fn matrix(&self, ring: &RingSpec) -> Mat2 {
        match *self {
            CosetRep::First { lam0, lam1 } => Mat2::new(
                R2Elem::new(lam0, lam1),
                ring.one(),
                ring.one(),
                ring.zero(),
            ),
            CosetRep::Second { mu } => Mat2::new(
                ring.one(),
                ring.zero(),
                R2Elem::new(ring.field.zero(), mu),
                ring.one(),
            ),
        }
    }
}

/// Factors an invertible `g` as `xi * b` with `xi` a coset representative and
/// `b` upper-triangular.  When the lower-left entry is a unit the first kind
/// applies with `lam = a c^{-1}`; otherwise the second kind with
/// `mu pi = c a^{-1}`.
pub fn coset_factor(ring: &RingSpec, g: &Mat2) -> Result<(CosetRep, Mat2), Gl2Error> {
    if !g.is_invertible(ring) {
        return Err(Gl2Error::NotInvertible);
    }
    let rep = if ring.is_unit(g.c) {
        let lam = ring.mul(g.a, ring.inv(g.c).unwrap());
        CosetRep::First { lam0: lam.a0, lam1: lam.a1 }
    } else {
        // a must be a unit here
        let t = ring.mul(g.c, ring.inv(g.a).unwrap());
        debug_assert_eq!(t.a0, ring.field.zero());
        CosetRep::Second { mu: t.a1 }
    };
    let xi = rep.matrix(ring);
    let b = xi.inv(ring)?.mul(ring, g);
    if !b.is_upper_triangular(ring) {
        return Err(Gl2Error::NotTriangular);
    }
    Ok((rep, b))
}

/// The character `[[a, b], [0, d]] -> d0^r` of the upper-triangular subgroup.
pub fn chi_r(ring: &RingSpec, b: &Mat2, r: NClass) -> Result<Fq, Gl2Error> {
    if !b.is_upper_triangular(ring) {
        return Err(Gl2Error::NotTriangular);
    }
    Ok(ring.field.pow_class(b.d.a0, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::nmonoid::NMonoid;
    use crate::ring2::Variant;
    use alloc::sync::Arc;
    use rand_core::{RngCore, SeedableRng};

    fn ring(p: u64, f: usize, variant: Variant) -> RingSpec {
        RingSpec::new(Arc::new(FieldSpec::new(p, f).unwrap()), variant)
    }

    fn random_invertible(ring: &RingSpec, rng: &mut rand_chacha::ChaCha8Rng) -> Mat2 {
        let q = ring.field.q();
        loop {
            let mut e = || {
                R2Elem::new(
                    Fq((rng.next_u64() % q) as u16),
                    Fq((rng.next_u64() % q) as u16),
                )
            };
            let g = Mat2::new(e(), e(), e(), e());
            if g.is_invertible(ring) {
                return g;
            }
        }
    }

    #[test]
    fn weyl_and_determinants() {
        for variant in [Variant::EqualChar, Variant::Witt] {
            let r = ring(3, 1, variant);
            let w = Mat2::w(&r);
            assert_eq!(w.mul(&r, &w), Mat2::identity(&r));
            assert_eq!(w.det(&r), r.neg(r.one()));
        }
    }

    #[test]
    fn inverse_round_trip_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for variant in [Variant::EqualChar, Variant::Witt] {
            let r = ring(3, 2, variant);
            for _ in 0..200 {
                let g = random_invertible(&r, &mut rng);
                assert_eq!(g.mul(&r, &g.inv(&r).unwrap()), Mat2::identity(&r));
            }
        }
    }

    #[test]
    fn group_order_q3() {
        // |GL2(O/m^2)| = q^4 (q^2 - 1)(q^2 - q) by exhaustive count at q = 3
        let r = ring(3, 1, Variant::EqualChar);
        let all: Vec<R2Elem> = r.enumerate().collect();
        let mut count = 0u64;
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    for &d in &all {
                        if Mat2::new(a, b, c, d).is_invertible(&r) {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count, 3888);
    }

    #[test]
    fn standard_generator_count_and_invertibility() {
        let r = ring(3, 1, Variant::EqualChar);
        let gens = GeneratorSet::standard(&r);
        assert_eq!(gens.len(), 6); // w + 2 torus + 2 uppers + 1 diagonal
        for g in &gens.gens {
            assert!(g.mat.is_invertible(&r));
        }
        let r2 = ring(3, 2, Variant::Witt);
        assert_eq!(GeneratorSet::standard(&r2).len(), 9);
    }

    #[test]
    fn weyl_conjugation_swaps_torus() {
        let r = ring(5, 1, Variant::EqualChar);
        let w = Mat2::w(&r);
        let x = r.teichmueller(Fq(2));
        let y = r.teichmueller(Fq(4));
        let d = Mat2::diag(&r, x, y);
        assert_eq!(w.mul(&r, &d).mul(&r, &w), Mat2::diag(&r, y, x));
    }

    #[test]
    fn coset_factor_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for variant in [Variant::EqualChar, Variant::Witt] {
            let r = ring(3, 2, variant);
            for _ in 0..500 {
                let g = random_invertible(&r, &mut rng);
                let (rep, b) = coset_factor(&r, &g).unwrap();
                assert!(b.is_upper_triangular(&r));
                assert_eq!(rep.matrix(&r).mul(&r, &b), g);
            }
        }
    }

    #[test]
    fn coset_factor_special_cases() {
        let r = ring(3, 1, Variant::EqualChar);
        // w factors as first kind with lam = 0 and b = identity
        let (rep, b) = coset_factor(&r, &Mat2::w(&r)).unwrap();
        assert_eq!(rep, CosetRep::First { lam0: Fq(0), lam1: Fq(0) });
        assert_eq!(b, Mat2::identity(&r));
        // an upper-triangular matrix factors as second kind with mu = 0
        let g = Mat2::upper(&r, r.pi());
        let (rep, b) = coset_factor(&r, &g).unwrap();
        assert_eq!(rep, CosetRep::Second { mu: Fq(0) });
        assert_eq!(b, g);
    }

    #[test]
    fn coset_label_constant_on_cosets() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let r = ring(3, 1, Variant::Witt);
        for _ in 0..200 {
            let g = random_invertible(&r, &mut rng);
            let (rep, _) = coset_factor(&r, &g).unwrap();
            // multiply by a random upper-triangular element on the right
            let q = r.field.q();
            let b = Mat2::new(
                R2Elem::new(Fq((rng.next_u64() % (q - 1) + 1) as u16), Fq((rng.next_u64() % q) as u16)),
                R2Elem::new(Fq((rng.next_u64() % q) as u16), Fq((rng.next_u64() % q) as u16)),
                r.zero(),
                R2Elem::new(Fq((rng.next_u64() % (q - 1) + 1) as u16), Fq((rng.next_u64() % q) as u16)),
            );
            let (rep2, _) = coset_factor(&r, &g.mul(&r, &b)).unwrap();
            assert_eq!(rep, rep2);
        }
    }

    #[test]
    fn chi_examples() {
        let r = ring(3, 1, Variant::EqualChar);
        let m = NMonoid::new(3, 1);
        let id = Mat2::identity(&r);
        assert_eq!(chi_r(&r, &id, m.from_integer(1)).unwrap(), Fq(1));
        let d = Mat2::diag(&r, r.one(), r.teichmueller(Fq(2)));
        assert_eq!(chi_r(&r, &d, m.q_minus_one()).unwrap(), Fq(1));
        assert_eq!(chi_r(&r, &d, m.from_integer(1)).unwrap(), Fq(2));
        assert!(chi_r(&r, &Mat2::w(&r), m.from_integer(1)).is_err());
    }
}
