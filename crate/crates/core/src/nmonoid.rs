//! The exponent monoid of base-p digit tuples.
//!
//! Non-negative integers act on the residue field by `x -> x^a`; two
//! exponents are identified when those maps agree, which happens exactly for
//! `a = b = 0` or `a, b > 0` with `a = b mod q-1`.  The quotient is a monoid
//! whose non-zero part is the group `Z/(q-1)Z`.  Every class has a unique
//! representative digit tuple `(a_0, ..., a_{f-1})` with `0 <= a_i <= p-1`,
//! the class `q-1` being the all-`(p-1)` tuple.  The digit-wise partial
//! order, the two partial subtractions, the carry sets of additions and
//! admissibility all live here.

use alloc::boxed::Box;
use alloc::vec::Vec;
use alloc::{format, string::String, vec};
use core::fmt;

use crate::gf::MAX_F;

/// A class of the exponent monoid, stored as its canonical digit tuple
/// (index `i` holds the coefficient of `p^i`; unused positions are zero).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NClass {
    digits: [u8; MAX_F],
}

impl fmt::Debug for NClass {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "NClass{:?}", self.digits)
    }
}

/// A subset of `Z/fZ`, as a bitmask over the digit positions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CarrySet(pub u8);

impl fmt::Debug for CarrySet {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{{")?;
        let mut first = true;
        for i in 0..8 {
            if self.contains(i) {
                if !first {
                    write!(out, ",")?;
                }
                write!(out, "{i}")?;
                first = false;
            }
        }
        write!(out, "}}")
    }
}

impl CarrySet {
    pub const EMPTY: CarrySet = CarrySet(0);

    pub fn full(f: usize) -> CarrySet {
        CarrySet(((1u16 << f) - 1) as u8)
    }

    pub fn singleton(i: usize) -> CarrySet {
        CarrySet(1 << i)
    }

    pub fn from_members(members: &[usize]) -> CarrySet {
        let mut s = 0u8;
        for &i in members {
            s |= 1 << i;
        }
        CarrySet(s)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(&self, other: CarrySet) -> CarrySet {
        CarrySet(self.0 | other.0)
    }

    pub fn intersection(&self, other: CarrySet) -> CarrySet {
        CarrySet(self.0 & other.0)
    }

    pub fn difference(&self, other: CarrySet) -> CarrySet {
        CarrySet(self.0 & !other.0)
    }

    pub fn is_subset(&self, other: CarrySet) -> bool {
        self.0 & !other.0 == 0
    }

    /// `{ i - b : i in self }` with indices cyclic modulo `f`.
    pub fn shift_down(&self, b: usize, f: usize) -> CarrySet {
        let mut out = CarrySet::EMPTY;
        for i in 0..f {
            if self.contains(i) {
                out.insert((i + f - b % f) % f);
            }
        }
        out
    }

    pub fn iter(&self, f: usize) -> impl Iterator<Item = usize> + '_ {
        let mask = *self;
        (0..f).filter(move |&i| mask.contains(i))
    }

    /// All `2^f` subsets, sorted by bitmask.
    pub fn enumerate(f: usize) -> impl Iterator<Item = CarrySet> {
        (0..(1u16 << f)).map(|m| CarrySet(m as u8))
    }

    pub fn to_sorted_vec(&self, f: usize) -> Vec<usize> {
        self.iter(f).collect()
    }

    pub fn display(&self, f: usize) -> String {
        let items: Vec<String> = self.iter(f).map(|i| format!("{i}")).collect();
        format!("{{{}}}", items.join(","))
    }
}

/// Errors from the partial operations of the monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NMonoidError {
    /// Group subtraction `a - b` requires `a != 0`.
    SubtractFromZero,
    /// Digit subtraction requires `0 != alpha <= beta` digit-wise.
    DotminusUndefined,
    /// A tree shape whose leaf count differs from the leaf list.
    LeafCountMismatch { shape: usize, leaves: usize },
}

impl fmt::Display for NMonoidError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NMonoidError::SubtractFromZero => write!(out, "group difference a - b needs a != 0"),
            NMonoidError::DotminusUndefined => {
                write!(out, "digit difference b .- a needs 0 != a <= b digit-wise")
            }
            NMonoidError::LeafCountMismatch { shape, leaves } => {
                write!(out, "tree has {shape} leaves but {leaves} values were supplied")
            }
        }
    }
}

/// The monoid context: everything is relative to `(p, f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NMonoid {
    pub p: u64,
    pub f: usize,
}

/// A full binary tree shape; leaves are consumed left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeShape {
    Leaf,
    Node(Box<TreeShape>, Box<TreeShape>),
}

impl TreeShape {
    pub fn leaf_count(&self) -> usize {
        match self {
            TreeShape::Leaf => 1,
            TreeShape::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// All full binary tree shapes with `m` leaves (the Catalan family).
    pub fn enumerate(m: usize) -> Vec<TreeShape> {
        assert!(m >= 1);
        if m == 1 {
            return vec![TreeShape::Leaf];
        }
        let mut out = Vec::new();
        for k in 1..m {
            for l in TreeShape::enumerate(k) {
                for r in TreeShape::enumerate(m - k) {
                    out.push(TreeShape::Node(Box::new(l.clone()), Box::new(r.clone())));
                }
            }
        }
        out
    }
}

impl NMonoid {
    pub fn new(p: u64, f: usize) -> NMonoid {
        assert!(p >= 3 && f >= 1 && f <= MAX_F);
        NMonoid { p, f }
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f as u32)
    }

    pub fn zero(&self) -> NClass {
        NClass::default()
    }

    /// The class `q - 1`, i.e. the all-`(p-1)` tuple.
    pub fn q_minus_one(&self) -> NClass {
        let mut digits = [0u8; MAX_F];
        for d in digits.iter_mut().take(self.f) {
            *d = (self.p - 1) as u8;
        }
        NClass { digits }
    }

    /// The class of the non-negative integer `m`.
    pub fn from_integer(&self, m: u64) -> NClass {
        if m == 0 {
            return self.zero();
        }
        let rep = (m - 1) % (self.q() - 1) + 1;
        self.from_canonical_rep(rep)
    }

    fn from_canonical_rep(&self, mut rep: u64) -> NClass {
        debug_assert!(rep >= 1 && rep <= self.q() - 1);
        let mut digits = [0u8; MAX_F];
        for d in digits.iter_mut().take(self.f) {
            *d = (rep % self.p) as u8;
            rep /= self.p;
        }
        NClass { digits }
    }

    pub fn from_digits(&self, digits: &[u8]) -> NClass {
        assert_eq!(digits.len(), self.f);
        let mut d = [0u8; MAX_F];
        for (i, &x) in digits.iter().enumerate() {
            assert!((x as u64) < self.p);
            d[i] = x;
        }
        NClass { digits: d }
    }

    /// All `q` classes: zero followed by the canonical representatives
    /// `1, ..., q-1`.
    pub fn enumerate(&self) -> impl Iterator<Item = NClass> + '_ {
        (0..self.q()).map(|m| self.from_integer(m))
    }

    /// All classes digit-wise below `beta`, in digit-lexicographic order.
    pub fn subclasses(&self, beta: NClass) -> Vec<NClass> {
        let mut out = Vec::new();
        let mut cur = [0u8; MAX_F];
        loop {
            out.push(NClass { digits: cur });
            // increment in mixed radix bounded by beta's digits
            let mut i = 0;
            loop {
                if i == self.f {
                    return out;
                }
                if cur[i] < beta.digits[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// `p^I` as a class: the sum of `p^i` over `i in I` (zero for empty `I`).
    pub fn p_of_set(&self, set: CarrySet) -> NClass {
        let mut digits = [0u8; MAX_F];
        for i in set.iter(self.f) {
            digits[i] = 1;
        }
        NClass { digits }
    }

    pub fn add(&self, a: NClass, b: NClass) -> NClass {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let s = a.to_integer(self.p) + b.to_integer(self.p);
        let rep = (s - 1) % (self.q() - 1) + 1;
        self.from_canonical_rep(rep)
    }

    /// Group difference: the unique non-zero `c` with `b + c = a`.
    pub fn sub_group(&self, a: NClass, b: NClass) -> Result<NClass, NMonoidError> {
        if a.is_zero() {
            return Err(NMonoidError::SubtractFromZero);
        }
        if b.is_zero() {
            return Ok(a);
        }
        let n = self.q() - 1;
        let diff = (a.to_integer(self.p) + n - b.to_integer(self.p) - 1) % n + 1;
        Ok(self.from_canonical_rep(diff))
    }

    /// Digit difference: the unique `c` strictly below `b` with `a + c = b`;
    /// requires `0 != a <= b` digit-wise.
    pub fn dotminus(&self, b: NClass, a: NClass) -> Result<NClass, NMonoidError> {
        if a.is_zero() || !self.leq(a, b) {
            return Err(NMonoidError::DotminusUndefined);
        }
        Ok(self.digit_sub(b, a))
    }

    /// Digit-wise subtraction for `a <= b`; unlike [`Self::dotminus`] this is
    /// total at `a = 0` (returning `b`), which the closed-form order needs.
    pub fn digit_sub(&self, b: NClass, a: NClass) -> NClass {
        debug_assert!(self.leq(a, b));
        let mut digits = [0u8; MAX_F];
        for i in 0..self.f {
            digits[i] = b.digits[i] - a.digits[i];
        }
        NClass { digits }
    }

    /// The digit-wise partial order.
    pub fn leq(&self, a: NClass, b: NClass) -> bool {
        (0..self.f).all(|i| a.digits[i] <= b.digits[i])
    }

    pub fn lt(&self, a: NClass, b: NClass) -> bool {
        a != b && self.leq(a, b)
    }

    /// The carry set of the addition `a + b`: the unique subset of `Z/fZ`
    /// determined by the cyclic carrying of the digit tuples, with the
    /// all-columns-sum-to-`p-1` tie resolved to the empty set.
    pub fn carry_set(&self, a: NClass, b: NClass) -> CarrySet {
        for assumed in [0u64, 1] {
            let mut carry = assumed;
            let mut out = CarrySet::EMPTY;
            for i in 0..self.f {
                let s = a.digits[i] as u64 + b.digits[i] as u64 + carry;
                carry = u64::from(s >= self.p);
                if carry == 1 {
                    out.insert(i);
                }
            }
            if carry == assumed {
                return out;
            }
        }
        unreachable!("one of the two carry assumptions is always consistent")
    }

    /// Whether `set` arises as the carry set of some decomposition
    /// `alpha + beta = gamma`.
    pub fn is_admissible(&self, set: CarrySet, gamma: NClass) -> bool {
        if gamma.is_zero() {
            // the only decomposition of zero is 0 + 0, with no carries
            return set.is_empty();
        }
        if gamma == self.q_minus_one() {
            return set.is_empty() || set == CarrySet::full(self.f);
        }
        for i in 0..self.f {
            let prev = (i + self.f - 1) % self.f;
            if gamma.digits[i] == 0 && set.contains(prev) && !set.contains(i) {
                return false;
            }
            if gamma.digits[i] as u64 == self.p - 1 && set.contains(i) && !set.contains(prev) {
                return false;
            }
        }
        true
    }

    /// Sums the leaves two at a time following `shape` and collects the
    /// disjoint union of the interior-node carry sets, as a multiset over
    /// the columns: entry `i` counts how many of the additions carried in
    /// column `i`.
    pub fn carry_multiset_tree(
        &self,
        leaves: &[NClass],
        shape: &TreeShape,
    ) -> Result<Vec<u32>, NMonoidError> {
        if shape.leaf_count() != leaves.len() || leaves.len() < 2 {
            return Err(NMonoidError::LeafCountMismatch {
                shape: shape.leaf_count(),
                leaves: leaves.len(),
            });
        }
        let mut counts = vec![0u32; self.f];
        let mut pos = 0usize;
        self.tree_walk(shape, leaves, &mut pos, &mut counts);
        Ok(counts)
    }

    fn tree_walk(
        &self,
        shape: &TreeShape,
        leaves: &[NClass],
        pos: &mut usize,
        counts: &mut Vec<u32>,
    ) -> NClass {
        match shape {
            TreeShape::Leaf => {
                let v = leaves[*pos];
                *pos += 1;
                v
            }
            TreeShape::Node(l, r) => {
                let lv = self.tree_walk(l, leaves, pos, counts);
                let rv = self.tree_walk(r, leaves, pos, counts);
                let set = self.carry_set(lv, rv);
                for (i, c) in counts.iter_mut().enumerate() {
                    if set.contains(i) {
                        *c += 1;
                    }
                }
                self.add(lv, rv)
            }
        }
    }

    /// `binom(b, a)` in `F_p`, as the product of digit-wise binomials.
    pub fn binom_mod_p(&self, b: NClass, a: NClass) -> u64 {
        let mut acc = 1u64;
        for i in 0..self.f {
            acc = acc * binom_small(b.digits[i] as u64, a.digits[i] as u64) % self.p;
        }
        acc
    }
}

fn binom_small(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl NClass {
    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn digit(&self, i: usize, f: usize) -> u8 {
        self.digits[i % f]
    }

    pub fn digits(&self, f: usize) -> &[u8] {
        &self.digits[..f]
    }

    /// Canonical integer representative: `0` for the zero class, otherwise
    /// the value of the digit tuple, which lies in `1..=q-1`.
    pub fn to_integer(&self, p: u64) -> u64 {
        let mut acc = 0u64;
        for &d in self.digits.iter().rev() {
            acc = acc * p + d as u64;
        }
        acc
    }

    /// Parity of the canonical representative (well-defined as `q-1` is even).
    pub fn is_odd(&self, p: u64) -> bool {
        self.to_integer(p) % 2 == 1
    }

    pub fn support(&self, f: usize) -> CarrySet {
        let mut s = CarrySet::EMPTY;
        for i in 0..f {
            if self.digits[i] != 0 {
                s.insert(i);
            }
        }
        s
    }

    pub fn display(&self, f: usize) -> String {
        let parts: Vec<String> = self.digits[..f].iter().map(|d| format!("{d}")).collect();
        format!("({})", parts.join(","))
    }
}
