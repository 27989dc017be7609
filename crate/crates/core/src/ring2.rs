//! The length-two quotient `O/m^2` in Teichmueller digit coordinates.
//!
//! An element is a pair `(a0, a1)` standing for `[a0] + [a1] pi`, where
//! `[x]` is the Teichmueller lift and `pi` a fixed uniformizer.  Two variants
//! share this coordinate system:
//!
//! - [`Variant::EqualChar`] (`e >= 2`, so also function fields): the ring is
//!   `F_q[pi]/(pi^2)` and addition is digit-wise;
//! - [`Variant::Witt`] (`e = 1`, `pi = p`): sums of Teichmueller lifts pick
//!   up the correction `S(a0, b0)^{p^{f-1}}` in the second digit, where
//!   `S(x, y) = (x^p + y^p - (x+y)^p) / p`.
//!
//! Multiplication and inversion look the same in both variants because the
//! lifts are multiplicative.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::gf::{FieldError, FieldSpec, Fq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `O/m^2 = F_q[pi]/(pi^2)`; models every ramification index `e >= 2`.
    EqualChar,
    /// Unramified, `pi = p`: Witt-vector addition in length two.
    Witt,
}

impl fmt::Display for Variant {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::EqualChar => write!(out, "equalchar"),
            Variant::Witt => write!(out, "witt"),
        }
    }
}

/// An element `[a0] + [a1] pi` of `O/m^2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct R2Elem {
    pub a0: Fq,
    pub a1: Fq,
}

impl R2Elem {
    pub fn new(a0: Fq, a1: Fq) -> R2Elem {
        R2Elem { a0, a1 }
    }
}

/// The ring `O/m^2` over a fixed residue field, in one of the two variants.
#[derive(Clone)]
pub struct RingSpec {
    pub field: Arc<FieldSpec>,
    pub variant: Variant,
    /// Coefficients of `S(x, y)`: `s_coeff[a-1]` is `-binom(p, a)/p mod p`,
    /// the coefficient of `x^a y^{p-a}` for `1 <= a <= p-1`.
    s_coeff: Vec<Fq>,
}

impl fmt::Debug for RingSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "RingSpec(q={}, {})", self.field.q(), self.variant)
    }
}

impl RingSpec {
    pub fn new(field: Arc<FieldSpec>, variant: Variant) -> RingSpec {
        let p = field.p();
        let mut s_coeff = Vec::with_capacity(p as usize - 1);
        // binom(p, a) is divisible by p for 0 < a < p; build it incrementally
        // as an exact integer (p <= 7, so u128 is ample).
        let mut binom: u128 = 1;
        for a in 1..p {
            binom = binom * (p as u128 - a as u128 + 1) / a as u128;
            let reduced = (binom / p as u128) % p as u128;
            let neg = (p as u128 - reduced) % p as u128;
            s_coeff.push(field.from_int(neg as i64));
        }
        RingSpec { field, variant, s_coeff }
    }

    pub fn zero(&self) -> R2Elem {
        R2Elem::default()
    }

    pub fn one(&self) -> R2Elem {
        R2Elem::new(self.field.one(), self.field.zero())
    }

    /// The uniformizer `pi = (0, 1)`.
    pub fn pi(&self) -> R2Elem {
        R2Elem::new(self.field.zero(), self.field.one())
    }

    /// The Teichmueller lift `[x] = (x, 0)`.
    pub fn teichmueller(&self, x: Fq) -> R2Elem {
        R2Elem::new(x, self.field.zero())
    }

    /// `S(x, y) = (x^p + y^p - (x+y)^p)/p` reduced into `F_q`.
    pub fn witt_s(&self, x: Fq, y: Fq) -> Fq {
        let k = &*self.field;
        let mut acc = k.zero();
        // sum of s_coeff[a-1] x^a y^{p-a}
        let mut xp = x; // x^a
        for a in 1..self.field.p() {
            let ypow = k.pow(y, self.field.p() - a);
            acc = k.add(acc, k.mul(self.s_coeff[a as usize - 1], k.mul(xp, ypow)));
            xp = k.mul(xp, x);
        }
        acc
    }

    pub fn add(&self, a: R2Elem, b: R2Elem) -> R2Elem {
        let k = &*self.field;
        let a0 = k.add(a.a0, b.a0);
        let mut a1 = k.add(a.a1, b.a1);
        if self.variant == Variant::Witt {
            let s = self.witt_s(a.a0, b.a0);
            a1 = k.add(a1, k.frobenius(s, self.field.f() - 1));
        }
        R2Elem::new(a0, a1)
    }

    pub fn neg(&self, a: R2Elem) -> R2Elem {
        let k = &*self.field;
        // [-x] = -[x] since p is odd, so negation is digit-wise in both
        // variants
        R2Elem::new(k.neg(a.a0), k.neg(a.a1))
    }

    pub fn sub(&self, a: R2Elem, b: R2Elem) -> R2Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: R2Elem, b: R2Elem) -> R2Elem {
        let k = &*self.field;
        R2Elem::new(
            k.mul(a.a0, b.a0),
            k.add(k.mul(a.a0, b.a1), k.mul(a.a1, b.a0)),
        )
    }

    pub fn is_unit(&self, a: R2Elem) -> bool {
        a.a0 != self.field.zero()
    }

    /// `([a0] + [a1] pi)^{-1} = [a0^{-1}] - [a0^{-2} a1] pi`, valid in both
    /// variants.
    pub fn inv(&self, a: R2Elem) -> Result<R2Elem, FieldError> {
        let k = &*self.field;
        let i0 = k.inv(a.a0)?;
        let i1 = k.neg(k.mul(k.mul(i0, i0), a.a1));
        Ok(R2Elem::new(i0, i1))
    }

    /// All `q^2` elements, `a1` varying fastest.
    pub fn enumerate(&self) -> impl Iterator<Item = R2Elem> + '_ {
        self.field
            .enumerate()
            .flat_map(move |a0| self.field.enumerate().map(move |a1| R2Elem::new(a0, a1)))
    }

    pub fn display(&self, a: R2Elem) -> String {
        use alloc::format;
        format!("[{}]+[{}]pi", self.field.display(a.a0), self.field.display(a.a1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(p: u64, f: usize, variant: Variant) -> RingSpec {
        RingSpec::new(Arc::new(FieldSpec::new(p, f).unwrap()), variant)
    }

    #[test]
    fn witt_s_examples() {
        let r = ring(3, 1, Variant::Witt);
        // (1 + 1 - 8)/3 = -2 = 1 mod 3
        assert_eq!(r.witt_s(Fq(1), Fq(1)), Fq(1));
        for x in r.field.enumerate() {
            assert_eq!(r.witt_s(x, Fq(0)), Fq(0));
            for y in r.field.enumerate() {
                assert_eq!(r.witt_s(x, y), r.witt_s(y, x));
            }
        }
    }

    #[test]
    fn witt_s_matches_exact_integer_definition() {
        // evaluate (x^p + y^p - (x+y)^p)/p exactly on integer representatives
        for p in [3u64, 5, 7] {
            let r = ring(p, 1, Variant::Witt);
            for x in 0..p {
                for y in 0..p {
                    let pw = |n: u64| -> i128 { (n as i128).pow(p as u32) };
                    let exact = (pw(x) + pw(y) - pw(x + y)) / p as i128;
                    let expect = r.field.from_int(exact.rem_euclid(p as i128) as i64);
                    assert_eq!(r.witt_s(Fq(x as u16), Fq(y as u16)), expect);
                }
            }
        }
    }

    #[test]
    fn equal_char_addition_is_digitwise() {
        let r = ring(3, 2, Variant::EqualChar);
        for a in r.enumerate() {
            assert_eq!(r.add(a, r.zero()), a);
        }
        let a = R2Elem::new(Fq(5), Fq(7));
        let b = R2Elem::new(Fq(8), Fq(2));
        let s = r.add(a, b);
        assert_eq!(s.a0, r.field.add(Fq(5), Fq(8)));
        assert_eq!(s.a1, r.field.add(Fq(7), Fq(2)));
    }

    #[test]
    fn witt_addition_example() {
        let r = ring(3, 1, Variant::Witt);
        let one = r.one();
        let two = r.add(one, one);
        // [1] + [1] = 2 in Z/9, and [2] = 8, so 2 = 8 + 3*1 gives digits (2, 1)
        assert_eq!(two, R2Elem::new(Fq(2), Fq(1)));
        let sq = r.mul(R2Elem::new(Fq(2), Fq(0)), R2Elem::new(Fq(2), Fq(0)));
        assert_eq!(sq, R2Elem::new(Fq(1), Fq(0))); // [2]^2 = 64 = 1 mod 9
    }

    /// Teichmueller lift in `Z/p^2`: `[x] = x^p mod p^2`.
    fn teich_int(x: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        for _ in 0..p {
            acc = acc * x % (p * p);
        }
        acc
    }

    #[test]
    fn witt_variant_is_z_mod_p_squared() {
        for p in [3u64, 5] {
            let r = ring(p, 1, Variant::Witt);
            let to_int = |a: R2Elem| (teich_int(a.a0.0 as u64, p) + a.a1.0 as u64 * p) % (p * p);
            for a in r.enumerate() {
                for b in r.enumerate() {
                    assert_eq!(to_int(r.add(a, b)), (to_int(a) + to_int(b)) % (p * p));
                    assert_eq!(to_int(r.mul(a, b)), to_int(a) * to_int(b) % (p * p));
                }
            }
        }
    }

    #[test]
    fn ring_axioms_exhaustive() {
        for variant in [Variant::EqualChar, Variant::Witt] {
            for (p, f) in [(3u64, 1usize), (3, 2)] {
                let r = ring(p, f, variant);
                let all: Vec<R2Elem> = r.enumerate().collect();
                assert_eq!(all.len(), (r.field.q() * r.field.q()) as usize);
                let mut units = 0usize;
                for &a in &all {
                    assert_eq!(r.add(a, r.zero()), a);
                    assert_eq!(r.mul(a, r.one()), a);
                    assert_eq!(r.add(a, r.neg(a)), r.zero());
                    if r.is_unit(a) {
                        units += 1;
                        let inv = r.inv(a).unwrap();
                        assert_eq!(r.mul(a, inv), r.one());
                    } else {
                        assert!(r.inv(a).is_err());
                    }
                    for &b in &all {
                        assert_eq!(r.add(a, b), r.add(b, a));
                        assert_eq!(r.mul(a, b), r.mul(b, a));
                    }
                }
                let q = r.field.q();
                assert_eq!(units as u64, q * (q - 1));
                // m^2 = 0
                assert_eq!(r.mul(r.pi(), r.pi()), r.zero());
            }
        }
    }

    #[test]
    fn inverse_agrees_with_brute_force_search() {
        for variant in [Variant::EqualChar, Variant::Witt] {
            let r = ring(3, 2, variant);
            for a in r.enumerate().filter(|&a| r.is_unit(a)) {
                let inv = r.inv(a).unwrap();
                let found: Vec<R2Elem> =
                    r.enumerate().filter(|&b| r.mul(a, b) == r.one()).collect();
                assert_eq!(found, alloc::vec![inv]);
            }
        }
    }

    #[test]
    fn inversion_formula_examples() {
        let r = ring(3, 1, Variant::EqualChar);
        let x = R2Elem::new(Fq(1), Fq(1));
        assert_eq!(r.inv(x).unwrap(), R2Elem::new(Fq(1), Fq(2))); // (1, -1)
        let w = ring(3, 1, Variant::Witt);
        // ([1]+3)([1]-3) = 4 * (-2) = -8 = 1 mod 9
        assert_eq!(w.mul(w.inv(x).unwrap(), x), w.one());
    }

    proptest! {
        #[test]
        fn addition_associative_under_both_variants(
            a in 0u16..25, b in 0u16..25, c in 0u16..25,
            d in 0u16..25, e in 0u16..25, g in 0u16..25,
        ) {
            for variant in [Variant::EqualChar, Variant::Witt] {
                let r = ring(5, 2, variant);
                let x = R2Elem::new(Fq(a), Fq(b));
                let y = R2Elem::new(Fq(c), Fq(d));
                let z = R2Elem::new(Fq(e), Fq(g));
                prop_assert_eq!(r.add(r.add(x, y), z), r.add(x, r.add(y, z)));
                prop_assert_eq!(r.mul(x, r.add(y, z)), r.add(r.mul(x, y), r.mul(x, z)));
                prop_assert_eq!(r.mul(r.mul(x, y), z), r.mul(x, r.mul(y, z)));
            }
        }
    }
}
