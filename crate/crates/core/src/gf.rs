//! Arithmetic in the prime field `F_p` and the extension `F_q`, `q = p^f`.
//!
//! Elements are represented by their index into a fixed enumeration of the
//! field: the element with polynomial-basis coefficients `(c_0, ..., c_{f-1})`
//! has index `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`.  A [`FieldSpec`] owns the
//! coefficient vectors together with add/mul/inv/Frobenius tables, so all
//! element operations are table lookups.  The tables are an internal cache;
//! the canonical representation of an element remains its dense coefficient
//! vector, available through [`FieldSpec::coeffs`].

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use crate::nmonoid::NClass;

/// Maximum supported extension degree.
pub const MAX_F: usize = 4;

/// An element of `F_q`, valid only relative to the [`FieldSpec`] that
/// produced it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fq(pub u16);

/// Errors arising while constructing or using a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// `p` is not an odd prime.
    NotOddPrime(u64),
    /// Unsupported extension degree.
    BadDegree(usize),
    /// The modulus is not monic of degree `f`, or has unreduced coefficients.
    MalformedModulus,
    /// The modulus polynomial factors over `F_p`.
    ReducibleModulus,
    /// Attempt to invert zero.
    ZeroInverse,
}

impl fmt::Display for FieldError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotOddPrime(p) => write!(out, "{p} is not an odd prime"),
            FieldError::BadDegree(f) => write!(out, "unsupported extension degree {f}"),
            FieldError::MalformedModulus => write!(out, "modulus is not a reduced monic polynomial"),
            FieldError::ReducibleModulus => write!(out, "modulus is reducible"),
            FieldError::ZeroInverse => write!(out, "inversion of zero"),
        }
    }
}

/// The field `F_{p^f}` presented as `F_p[x] / (modulus)`.
#[derive(Clone)]
pub struct FieldSpec {
    p: u64,
    f: usize,
    q: u64,
    /// Monic irreducible modulus, ascending degree, length `f + 1`.
    modulus: Vec<u64>,
    /// Coefficient vectors of all `q` elements, index order.
    elems: Vec<[u8; MAX_F]>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    /// `frob[i * q + x]` is `x^{p^i}` for `0 <= i < f`.
    frob: Vec<u16>,
    /// Smallest generator of the cyclic group `F_q^*`.
    generator: u16,
    /// `dlog[x]` solves `generator^dlog = x` for `x != 0`.
    dlog: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "FieldSpec(p={}, f={}, modulus={:?})", self.p, self.f, self.modulus)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial arithmetic over `F_p` on little-endian coefficient slices; only
/// used while building tables.
fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // reduce by the monic modulus
    let f = modulus.len() - 1;
    for i in (f..prod.len()).rev() {
        let c = prod[i];
        if c != 0 {
            prod[i] = 0;
            for j in 0..f {
                let t = (c * modulus[j]) % p;
                prod[i - f + j] = (prod[i - f + j] + p * p - t) % p;
            }
        }
    }
    prod.truncate(f);
    prod
}

/// Trial division by every monic polynomial of degree `1..=f/2`.
fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let f = modulus.len() - 1;
    if modulus[f] != 1 {
        return false;
    }
    for d in 1..=f / 2 {
        // enumerate monic divisors of degree d
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                div.push(c % p);
                c /= p;
            }
            div.push(1);
            if poly_rem_is_zero(modulus, &div, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u64], div: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = num.to_vec();
    let d = div.len() - 1;
    while rem.len() > d {
        let lead = *rem.last().unwrap();
        let deg = rem.len() - 1;
        if lead != 0 {
            for j in 0..=d {
                let t = (lead * div[j]) % p;
                rem[deg - d + j] = (rem[deg - d + j] + p * p - t) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

/// The lexicographically least monic irreducible of degree `f` over `F_p`,
/// comparing coefficient tuples `(c_0, ..., c_{f-1})`.
pub fn default_modulus(p: u64, f: usize) -> Vec<u64> {
    if f == 1 {
        // x itself: F_p[x]/(x) = F_p
        return vec![0, 1];
    }
    let count = p.pow(f as u32);
    for code in 0..count {
        let mut m = Vec::with_capacity(f + 1);
        let mut c = code;
        for _ in 0..f {
            m.push(c % p);
            c /= p;
        }
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

impl FieldSpec {
    /// Builds `F_{p^f}` with the default modulus.
    pub fn new(p: u64, f: usize) -> Result<FieldSpec, FieldError> {
        let modulus = if p >= 3 && is_prime(p) && f >= 1 && f <= MAX_F {
            default_modulus(p, f)
        } else {
            vec![0, 1] // placeholder; the checks below reject first
        };
        FieldSpec::with_modulus(p, f, modulus)
    }

    /// Builds `F_{p^f}` with an explicit monic irreducible modulus
    /// (ascending-degree coefficient list of length `f + 1`).
    pub fn with_modulus(p: u64, f: usize, modulus: Vec<u64>) -> Result<FieldSpec, FieldError> {
        if p < 3 || !is_prime(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        if f < 1 || f > MAX_F {
            return Err(FieldError::BadDegree(f));
        }
        if modulus.len() != f + 1
            || modulus[f] != 1
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(FieldError::MalformedModulus);
        }
        if !is_irreducible(&modulus, p) {
            return Err(FieldError::ReducibleModulus);
        }
        let q = p.pow(f as u32);
        let qs = q as usize;

        let mut elems = vec![[0u8; MAX_F]; qs];
        for (idx, e) in elems.iter_mut().enumerate() {
            let mut c = idx as u64;
            for d in e.iter_mut().take(f) {
                *d = (c % p) as u8;
                c /= p;
            }
        }
        let to_idx = |coeffs: &[u64]| -> u16 {
            let mut idx = 0u64;
            for i in (0..f).rev() {
                idx = idx * p + coeffs[i];
            }
            idx as u16
        };

        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        let mut neg = vec![0u16; qs];
        for a in 0..qs {
            let ca: Vec<u64> = elems[a][..f].iter().map(|&c| c as u64).collect();
            let cn: Vec<u64> = ca.iter().map(|&c| (p - c) % p).collect();
            neg[a] = to_idx(&cn);
            for b in a..qs {
                let cb: Vec<u64> = elems[b][..f].iter().map(|&c| c as u64).collect();
                let cs: Vec<u64> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % p).collect();
                let s = to_idx(&cs);
                add[a * qs + b] = s;
                add[b * qs + a] = s;
                let cm = poly_mul_mod(&ca, &cb, &modulus, p);
                let m = to_idx(&cm);
                mul[a * qs + b] = m;
                mul[b * qs + a] = m;
            }
        }

        let mut inv = vec![0u16; qs];
        for a in 1..qs {
            for b in 1..qs {
                if mul[a * qs + b] == 1 {
                    inv[a] = b as u16;
                    break;
                }
            }
            debug_assert!(inv[a] != 0 || q == 2);
        }

        let mut frob = vec![0u16; f * qs];
        for x in 0..qs {
            frob[x] = x as u16;
        }
        for i in 1..f {
            for x in 0..qs {
                // x^{p^i} = (x^{p^{i-1}})^p
                let prev = frob[(i - 1) * qs + x] as usize;
                let mut acc = prev;
                for _ in 1..p {
                    acc = mul[acc * qs + prev] as usize;
                }
                frob[i * qs + x] = acc as u16;
            }
        }

        // smallest primitive element
        let mut generator = 0u16;
        'outer: for g in 2..qs {
            let mut x = g;
            for _ in 1..q - 1 {
                if x == 1 {
                    continue 'outer;
                }
                x = mul[x * qs + g] as usize;
            }
            if x == 1 {
                generator = g as u16;
                break;
            }
        }
        if q == 3 {
            generator = 2;
        }
        debug_assert!(generator != 0 || q == 2);

        let mut dlog = vec![0u32; qs];
        let mut x = 1usize;
        for e in 0..q - 1 {
            dlog[x] = e as u32;
            x = mul[x * qs + generator as usize] as usize;
        }

        Ok(FieldSpec { p, f, q, modulus, elems, add, mul, neg, inv, frob, generator, dlog })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Fq {
        Fq(0)
    }

    pub fn one(&self) -> Fq {
        Fq(1)
    }

    /// Element from polynomial-basis coefficients (length `f`, reduced).
    pub fn from_coeffs(&self, coeffs: &[u8]) -> Fq {
        assert_eq!(coeffs.len(), self.f);
        let mut idx = 0u64;
        for i in (0..self.f).rev() {
            assert!((coeffs[i] as u64) < self.p);
            idx = idx * self.p + coeffs[i] as u64;
        }
        Fq(idx as u16)
    }

    pub fn coeffs(&self, x: Fq) -> &[u8] {
        &self.elems[x.0 as usize][..self.f]
    }

    /// The image of the integer `n` under `Z -> F_p <= F_q`.
    pub fn from_int(&self, n: i64) -> Fq {
        let r = n.rem_euclid(self.p as i64) as u16;
        Fq(r)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg[a.0 as usize])
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(Fq(self.inv[a.0 as usize]))
    }

    /// `x^n` for a non-negative integer exponent, with `x^0 = 1` (also at 0).
    pub fn pow(&self, x: Fq, n: u64) -> Fq {
        let mut acc = self.one();
        let mut base = x;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Exponentiation by a class of the exponent monoid: the zero class is the
    /// constant-one exponent on the whole field (including at `x = 0`), while
    /// a non-zero class acts as any of its positive integer representatives.
    pub fn pow_class(&self, x: Fq, alpha: NClass) -> Fq {
        if alpha.is_zero() {
            self.one()
        } else {
            self.pow(x, alpha.to_integer(self.p))
        }
    }

    /// `x^{p^i}`, `i` taken modulo `f`.
    pub fn frobenius(&self, x: Fq, i: usize) -> Fq {
        let i = i % self.f;
        Fq(self.frob[i * self.q as usize + x.0 as usize])
    }

    /// All `q` elements in index order, i.e. lexicographic on coefficient
    /// tuples read from the constant coefficient up.
    pub fn enumerate(&self) -> impl Iterator<Item = Fq> {
        (0..self.q as u16).map(Fq)
    }

    /// Smallest generator of `F_q^*`.
    pub fn multiplicative_generator(&self) -> Fq {
        Fq(self.generator)
    }

    /// Discrete logarithm base [`Self::multiplicative_generator`].
    pub fn dlog(&self, x: Fq) -> Result<u64, FieldError> {
        if x.0 == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.dlog[x.0 as usize] as u64)
    }

    /// Printable form, e.g. `2+x` for coefficients `(2, 1)`.
    pub fn display(&self, x: Fq) -> String {
        if x.0 == 0 {
            return String::from("0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, &c) in self.coeffs(x).iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => String::from("x"),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            };
            parts.push(term);
        }
        parts.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nmonoid::NMonoid;

    #[test]
    fn prime_field_arithmetic() {
        let k = FieldSpec::new(3, 1).unwrap();
        assert_eq!(k.add(Fq(2), Fq(2)), Fq(1));
        assert_eq!(k.inv(Fq(2)).unwrap(), Fq(2));
        let k5 = FieldSpec::new(5, 1).unwrap();
        assert_eq!(k5.mul(Fq(3), Fq(4)), Fq(2));
        assert!(k.inv(Fq(0)).is_err());
    }

    #[test]
    fn default_moduli_are_expected() {
        assert_eq!(default_modulus(3, 1), vec![0, 1]);
        assert_eq!(default_modulus(3, 2), vec![1, 0, 1]); // x^2 + 1
        assert_eq!(default_modulus(3, 3), vec![1, 2, 0, 1]); // x^3 + 2x + 1
        let k = FieldSpec::new(3, 3).unwrap();
        assert_eq!(k.q(), 27);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(FieldSpec::new(2, 1).is_err());
        assert!(FieldSpec::new(4, 1).is_err());
        assert!(FieldSpec::with_modulus(3, 2, vec![0, 0, 1]).is_err()); // x^2 reducible
        assert!(FieldSpec::with_modulus(3, 2, vec![1, 0, 2]).is_err()); // not monic
    }

    #[test]
    fn enumerate_is_lexicographic() {
        let k = FieldSpec::new(3, 1).unwrap();
        let all: Vec<Fq> = k.enumerate().collect();
        assert_eq!(all, vec![Fq(0), Fq(1), Fq(2)]);
        let k9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(k9.enumerate().count(), 9);
        assert_eq!(k9.coeffs(Fq(5)), &[2, 1]);
    }

    #[test]
    fn field_axioms_exhaustive_q9() {
        let k = FieldSpec::new(3, 2).unwrap();
        for a in k.enumerate() {
            for b in k.enumerate() {
                assert_eq!(k.mul(a, b), k.mul(b, a));
                assert_eq!(k.add(a, b), k.add(b, a));
                for c in k.enumerate() {
                    assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    assert_eq!(k.mul(a, k.mul(b, c)), k.mul(k.mul(a, b), c));
                }
            }
            if a != Fq(0) {
                assert_eq!(k.mul(a, k.inv(a).unwrap()), Fq(1));
                assert_eq!(k.pow(a, 8), Fq(1));
            }
        }
    }

    #[test]
    fn frobenius_is_additive_and_periodic() {
        for (p, f) in [(3usize, 2usize), (3, 1)] {
            let k = FieldSpec::new(p as u64, f).unwrap();
            for x in k.enumerate() {
                assert_eq!(k.frobenius(x, 0), x);
                assert_eq!(k.frobenius(x, f), x);
                for y in k.enumerate() {
                    let lhs = k.frobenius(k.add(x, y), 1);
                    let rhs = k.add(k.frobenius(x, 1), k.frobenius(y, 1));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn frobenius_cubes_a_root_of_the_modulus() {
        // p=3, f=2: x is a root of the modulus; its Frobenius twist is x^3.
        let k = FieldSpec::new(3, 2).unwrap();
        let x = k.from_coeffs(&[0, 1]);
        assert_eq!(k.frobenius(x, 1), k.pow(x, 3));
    }

    #[test]
    fn pow_class_semantics() {
        let k = FieldSpec::new(3, 2).unwrap();
        let m = NMonoid::new(3, 2);
        let zero_class = m.zero();
        let qm1 = m.q_minus_one();
        assert_eq!(k.pow_class(Fq(0), zero_class), Fq(1));
        assert_eq!(k.pow_class(Fq(0), qm1), Fq(0));
        let k3 = FieldSpec::new(3, 1).unwrap();
        let m3 = NMonoid::new(3, 1);
        assert_eq!(k3.pow_class(Fq(2), m3.from_integer(2)), Fq(1));
        // class independence: representatives m and m + (q-1) agree
        for x in k.enumerate() {
            for e in 1..=8u64 {
                assert_eq!(k.pow(x, e), k.pow(x, e + 8));
            }
        }
    }

    #[test]
    fn generator_and_dlog() {
        for (p, f) in [(3, 1), (5, 1), (3, 2), (7, 1)] {
            let k = FieldSpec::new(p, f).unwrap();
            let g = k.multiplicative_generator();
            for x in k.enumerate().skip(1) {
                let e = k.dlog(x).unwrap();
                assert_eq!(k.pow(g, e), x);
            }
        }
    }
}
