//! Serre-weight bookkeeping and the combinatorics of constituents.
//!
//! This module carries the digit tables `s_J` / `t_J` attaching a Serre
//! weight `sigma_J(r)` to each subset `J` of `Z/fZ`, the two presentations of
//! the partial order on types in the ramified setting (by generating
//! relations on labels, and in closed form through carry sets), the level
//! graph with its surgery at the exceptional filtration steps, the recursive
//! constituent multiset, and the poset governing the unramified submodule
//! family.
//!
//! Index arithmetic on `Z/fZ` is cyclic throughout: in particular, for
//! `f = 1` the predecessor of the unique index is itself.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use crate::gf::MAX_F;
use crate::nmonoid::{CarrySet, NClass, NMonoid};

/// An irreducible representation of `GL2(k)`, recorded as a determinant
/// twist (modulo `q-1`, with the class `q-1` normalised to `0`) together
/// with the per-Frobenius-twist symmetric-power exponents.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SerreWeight {
    twist: NClass,
    sym_digits: [u8; MAX_F],
}

impl fmt::Debug for SerreWeight {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "SerreWeight(det^{:?} Sym{:?})", self.twist, self.sym_digits)
    }
}

impl SerreWeight {
    /// Builds a weight; the twist is reduced as a character of `k^*`, so the
    /// classes `0` and `q-1` coincide here (and only here).
    pub fn new(m: &NMonoid, twist: NClass, sym_digits: &[u8]) -> SerreWeight {
        assert_eq!(sym_digits.len(), m.f);
        let twist = if twist == m.q_minus_one() { m.zero() } else { twist };
        let mut d = [0u8; MAX_F];
        for (i, &t) in sym_digits.iter().enumerate() {
            assert!((t as u64) < m.p);
            d[i] = t;
        }
        SerreWeight { twist, sym_digits: d }
    }

    pub fn twist(&self) -> NClass {
        self.twist
    }

    pub fn sym_digits(&self, f: usize) -> &[u8] {
        &self.sym_digits[..f]
    }

    pub fn dimension(&self, f: usize) -> u64 {
        self.sym_digits[..f].iter().map(|&t| t as u64 + 1).product()
    }

    pub fn display(&self, m: &NMonoid) -> String {
        let s = self.twist.to_integer(m.p);
        let sym: Vec<String> =
            self.sym_digits[..m.f].iter().map(|t| format!("{t}")).collect();
        if m.f == 1 {
            format!("det^{s} Sym^{}", sym[0])
        } else {
            format!("det^{s} Sym^({})", sym.join(","))
        }
    }
}

/// A type in the ramified setting: a carry set together with a filtration
/// level.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RamType {
    pub set: CarrySet,
    pub gamma: NClass,
}

impl RamType {
    pub fn new(set: CarrySet, gamma: NClass) -> RamType {
        RamType { set, gamma }
    }

    pub fn display(&self, m: &NMonoid) -> String {
        format!("({},{})", self.set.display(m.f), self.gamma.display(m.f))
    }
}

/// A basis label `(j0, j1)` with `j0` either a class or the infinity symbol.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ThetaElem {
    /// `None` encodes the infinity label.
    pub j0: Option<NClass>,
    pub j1: NClass,
}

impl ThetaElem {
    pub fn finite(j0: NClass, j1: NClass) -> ThetaElem {
        ThetaElem { j0: Some(j0), j1 }
    }

    pub fn infinity(j1: NClass) -> ThetaElem {
        ThetaElem { j0: None, j1 }
    }

    pub fn display(&self, m: &NMonoid) -> String {
        match self.j0 {
            Some(j0) => format!("({},{})", j0.display(m.f), self.j1.display(m.f)),
            None => format!("(inf,{})", self.j1.display(m.f)),
        }
    }
}

/// An element `(J, I)` of the unramified index set: subsets of `Z/fZ` with
/// `J` disjoint from `I - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct UnramTheta {
    pub j: CarrySet,
    pub i: CarrySet,
}

impl UnramTheta {
    pub fn display(&self, f: usize) -> String {
        format!("({},{})", self.j.display(f), self.i.display(f))
    }
}

/// A character of the upper-triangular subgroup: `det^s` tensor the
/// character raising the lower-right residue to the `r`-th power.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BorelCharacter {
    pub det_twist: NClass,
    pub r: NClass,
}

impl BorelCharacter {
    /// `r` is a character exponent of the residue units, hence non-zero as a
    /// class; the determinant twist is normalised like a weight twist.
    pub fn new(m: &NMonoid, det_twist: NClass, r: NClass) -> BorelCharacter {
        assert!(!r.is_zero(), "the character exponent r lives in the non-zero classes");
        let det_twist = if det_twist == m.q_minus_one() { m.zero() } else { det_twist };
        BorelCharacter { det_twist, r }
    }

    /// Composition with the `beta`-th power of `diag(a, d) -> a d^{-1}`:
    /// `(s, r) -> (s + beta, r - 2 beta)`.
    pub fn eta_shift(&self, m: &NMonoid, beta: NClass) -> BorelCharacter {
        let two_beta = m.add(beta, beta);
        BorelCharacter::new(
            m,
            m.add(self.det_twist, beta),
            m.sub_group(self.r, two_beta).expect("r is non-zero"),
        )
    }
}

/// `r - 2 gamma` as a class (a group subtraction, hence non-zero).
pub fn r_minus_2gamma(m: &NMonoid, r: NClass, gamma: NClass) -> NClass {
    m.sub_group(r, m.add(gamma, gamma)).expect("r is non-zero")
}

/// The digit pieces of `s_J(r)`: `0` outside `J`, `r_i + 1` on the lower
/// boundary of `J`, `r_i` in the cyclic interior.
fn s_piece(m: &NMonoid, r: NClass, set: CarrySet, i: usize) -> u64 {
    let prev = (i + m.f - 1) % m.f;
    let ri = r.digit(i, m.f) as u64;
    if !set.contains(i) {
        0
    } else if !set.contains(prev) {
        ri + 1
    } else {
        ri
    }
}

/// `s_J(r)` as a class, accumulated by monoid addition of the digit pieces.
///
/// Panics if a piece exceeds `p - 1`; this cannot happen when `J` is
/// `r`-admissible, which every caller guarantees.
pub fn s_j(m: &NMonoid, r: NClass, set: CarrySet) -> NClass {
    let mut acc = m.zero();
    for i in 0..m.f {
        let piece = s_piece(m, r, set, i);
        assert!(
            piece <= m.p - 1,
            "s_J piece out of digit range: J is not admissible for r"
        );
        acc = m.add(acc, m.from_integer(piece * m.p.pow(i as u32)));
    }
    acc
}

/// The symmetric-power exponents `t_{J,i}(r)`.
///
/// Panics under the same admissibility proviso as [`s_j`].
pub fn t_j(m: &NMonoid, r: NClass, set: CarrySet) -> Vec<u8> {
    let mut out = Vec::with_capacity(m.f);
    for i in 0..m.f {
        let prev = (i + m.f - 1) % m.f;
        let ri = r.digit(i, m.f) as i64;
        let p = m.p as i64;
        let t = match (set.contains(prev), set.contains(i)) {
            (false, false) => ri,
            (true, false) => ri - 1,
            (false, true) => p - 2 - ri,
            (true, true) => p - 1 - ri,
        };
        assert!(
            (0..p).contains(&t),
            "t_J piece out of digit range: J is not admissible for r"
        );
        out.push(t as u8);
    }
    out
}

/// The Serre weight `sigma_J(r)` with twist `s_J(r)` and exponents `t_J(r)`.
pub fn sigma_j(m: &NMonoid, r: NClass, set: CarrySet) -> SerreWeight {
    SerreWeight::new(m, s_j(m, r, set), &t_j(m, r, set))
}

/// The carry-set presentation of the type of a basis label.
pub fn upsilon(m: &NMonoid, theta: ThetaElem, r: NClass) -> RamType {
    match theta.j0 {
        None => RamType::new(CarrySet::EMPTY, theta.j1),
        Some(j0) if j0.is_zero() => RamType::new(CarrySet::EMPTY, theta.j1),
        Some(j0) => {
            let rest = m
                .sub_group(r_minus_2gamma(m, r, theta.j1), j0)
                .expect("group subtraction from a non-zero class");
            RamType::new(m.carry_set(j0, rest), theta.j1)
        }
    }
}

/// The closed form of the order on types: `(I', g') <= (I, g)` when
/// `g' <= g` digit-wise and `I'` is covered by `I` together with the carry
/// sets of `(r - 2g) + 2(g .- g')` and `(g .- g') + (g .- g')`.
pub fn leq_r_closed(m: &NMonoid, a: RamType, b: RamType, r: NClass) -> bool {
    if !m.leq(a.gamma, b.gamma) {
        return false;
    }
    let delta = m.digit_sub(b.gamma, a.gamma);
    let two_delta = m.add(delta, delta);
    let allowed = b
        .set
        .union(m.carry_set(r_minus_2gamma(m, r, b.gamma), two_delta))
        .union(m.carry_set(delta, delta));
    a.set.is_subset(allowed)
}

pub fn lt_r_closed(m: &NMonoid, a: RamType, b: RamType, r: NClass) -> bool {
    a != b && leq_r_closed(m, a, b, r)
}

/// All pairs `(I, gamma)` with `I` admissible for `r - 2 gamma`, in a fixed
/// order (by `gamma`, then by the bitmask of `I`).
pub fn admissible_types(m: &NMonoid, r: NClass) -> Vec<RamType> {
    let mut out = Vec::new();
    for gamma in m.enumerate() {
        let target = r_minus_2gamma(m, r, gamma);
        for set in CarrySet::enumerate(m.f) {
            if m.is_admissible(set, target) {
                out.push(RamType::new(set, gamma));
            }
        }
    }
    out
}

/// The preorder on basis labels generated by the seven relation families,
/// with its equivalence classes and the induced partial order.
pub struct GeneratedOrder {
    m: NMonoid,
    nodes: Vec<ThetaElem>,
    node_index: BTreeMap<ThetaElem, usize>,
    /// Directed edges `x -> y` meaning `x <= y` by a single relation.
    pub edges: Vec<(usize, usize)>,
    class_of_node: Vec<usize>,
    classes: Vec<Vec<ThetaElem>>,
    /// `leq[a * nc + b]` on class indices.
    leq: Vec<bool>,
}

impl GeneratedOrder {
    /// Builds the preorder for the character exponent `r`.
    pub fn build(m: &NMonoid, r: NClass) -> GeneratedOrder {
        let mut nodes = Vec::new();
        for j1 in m.enumerate() {
            for j0 in m.enumerate() {
                nodes.push(ThetaElem::finite(j0, j1));
            }
            nodes.push(ThetaElem::infinity(j1));
        }
        let node_index: BTreeMap<ThetaElem, usize> =
            nodes.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let n = nodes.len();

        let mut edges: Vec<(usize, usize)> = Vec::new();
        let push = |edges: &mut Vec<(usize, usize)>, from: ThetaElem, to: ThetaElem| {
            edges.push((node_index[&from], node_index[&to]));
        };
        let powers: Vec<NClass> =
            (0..m.f).map(|i| m.from_integer(m.p.pow(i as u32))).collect();
        for j1 in m.enumerate() {
            for j0 in m.enumerate() {
                let here = ThetaElem::finite(j0, j1);
                for pm in &powers {
                    if m.leq(*pm, j0) {
                        // (1): lower the first component by p^m
                        push(&mut edges, ThetaElem::finite(m.digit_sub(j0, *pm), j1), here);
                    }
                    if m.leq(*pm, j1) {
                        let down = m.digit_sub(j1, *pm);
                        // (2): lower the second component
                        push(&mut edges, ThetaElem::finite(j0, down), here);
                        // (3): trade p^m from the second into the first
                        push(&mut edges, ThetaElem::finite(m.add(j0, *pm), down), here);
                    }
                }
                if !j0.is_zero() {
                    // (4): reflect j0 across r - 2 j1
                    let mirror = m
                        .sub_group(r_minus_2gamma(m, r, j1), j0)
                        .expect("non-zero difference");
                    push(&mut edges, ThetaElem::finite(mirror, j1), here);
                }
            }
            let inf = ThetaElem::infinity(j1);
            let rm2 = r_minus_2gamma(m, r, j1);
            for pm in &powers {
                if m.leq(*pm, j1) {
                    // (5)
                    push(&mut edges, ThetaElem::finite(rm2, m.digit_sub(j1, *pm)), inf);
                }
                if m.leq(*pm, rm2) {
                    // (6)
                    push(&mut edges, ThetaElem::finite(m.digit_sub(rm2, *pm), j1), inf);
                }
            }
            // (7): the zero and infinity labels are equivalent
            push(&mut edges, ThetaElem::finite(m.zero(), j1), inf);
            push(&mut edges, inf, ThetaElem::finite(m.zero(), j1));
        }

        // reachability closure by per-node depth-first search
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
        }
        let mut reach = vec![false; n * n];
        for start in 0..n {
            let mut stack = vec![start];
            reach[start * n + start] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !reach[start * n + w] {
                        reach[start * n + w] = true;
                        stack.push(w);
                    }
                }
            }
        }

        // strongly connected components = mutual reachability
        let mut class_of_node = vec![usize::MAX; n];
        let mut classes: Vec<Vec<ThetaElem>> = Vec::new();
        for v in 0..n {
            if class_of_node[v] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            for w in 0..n {
                if reach[v * n + w] && reach[w * n + v] {
                    class_of_node[w] = id;
                    members.push(nodes[w]);
                }
            }
            classes.push(members);
        }

        let nc = classes.len();
        let mut leq = vec![false; nc * nc];
        for v in 0..n {
            for w in 0..n {
                if reach[v * n + w] {
                    leq[class_of_node[v] * nc + class_of_node[w]] = true;
                }
            }
        }

        GeneratedOrder { m: *m, nodes, node_index, edges, class_of_node, classes, leq }
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, theta: ThetaElem) -> usize {
        self.class_of_node[self.node_index[&theta]]
    }

    pub fn class_members(&self, class: usize) -> &[ThetaElem] {
        &self.classes[class]
    }

    pub fn leq_classes(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.classes.len() + b]
    }

    pub fn nodes(&self) -> &[ThetaElem] {
        &self.nodes
    }

    /// The carry-set pair of a class through the label map; checks that the
    /// value is constant on the class.
    pub fn class_type(&self, class: usize, r: NClass) -> RamType {
        let mut it = self.classes[class].iter();
        let first = upsilon(&self.m, *it.next().expect("classes are non-empty"), r);
        for theta in it {
            debug_assert_eq!(upsilon(&self.m, *theta, r), first);
        }
        first
    }
}

/// The level graph on admissible types: edges join adjacent pairs of the
/// closed-form order, directed downward, with the exceptional surgery applied
/// at every `gamma` with `r - 2 gamma = q - 1`.
pub struct GammaGraph {
    pub r: NClass,
    pub vertices: Vec<RamType>,
    /// Directed edges `(from, to)` by vertex index, pointing down the order.
    pub edges: Vec<(usize, usize)>,
    /// Longest-path distance from the maximal vertex.
    pub level_up: Vec<u32>,
    /// Longest-path distance to the minimal vertex.
    pub level_down: Vec<u32>,
}

impl GammaGraph {
    pub fn build(m: &NMonoid, r: NClass) -> GammaGraph {
        let vertices = admissible_types(m, r);
        let n = vertices.len();
        let index = |v: RamType| {
            vertices
                .iter()
                .position(|&x| x == v)
                .expect("vertex is an admissible type")
        };

        // covering pairs of the closed-form order
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (bi, &b) in vertices.iter().enumerate() {
            for (ai, &a) in vertices.iter().enumerate() {
                if !lt_r_closed(m, a, b, r) {
                    continue;
                }
                let covered = vertices
                    .iter()
                    .any(|&c| lt_r_closed(m, a, c, r) && lt_r_closed(m, c, b, r));
                if !covered {
                    edges.push((bi, ai));
                }
            }
        }

        // surgery at the exceptional levels
        let full = CarrySet::full(m.f);
        for gamma in m.enumerate() {
            if r_minus_2gamma(m, r, gamma) != m.q_minus_one() {
                continue;
            }
            let top = index(RamType::new(full, gamma));
            let bottom = index(RamType::new(CarrySet::EMPTY, gamma));
            edges.retain(|&(a, b)| (a, b) != (top, bottom));
            for i in 0..m.f {
                let pm = m.from_integer(m.p.pow(i as u32));
                if m.leq(pm, gamma) {
                    let target = index(RamType::new(full, m.digit_sub(gamma, pm)));
                    if !edges.contains(&(top, target)) {
                        edges.push((top, target));
                    }
                }
            }
        }

        let level_up = longest_paths_from(n, &edges, index(RamType::new(full, m.q_minus_one())));
        let rev: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (b, a)).collect();
        let level_down =
            longest_paths_from(n, &rev, index(RamType::new(CarrySet::EMPTY, m.zero())));

        GammaGraph { r, vertices, edges, level_up, level_down }
    }

    pub fn vertex_index(&self, v: RamType) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    /// The largest level (the common length of both level functions).
    pub fn depth(&self) -> u32 {
        self.level_up.iter().copied().max().unwrap_or(0)
    }
}

/// Longest-path distances from `start` in a directed acyclic graph, by
/// iterated relaxation (the graphs here are tiny).  Vertices not reachable
/// from `start` keep distance `u32::MAX`.
fn longest_paths_from(n: usize, edges: &[(usize, usize)], start: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; n];
    dist[start] = 0;
    loop {
        let mut changed = false;
        for &(a, b) in edges {
            if dist[a] != u32::MAX && (dist[b] == u32::MAX || dist[b] < dist[a] + 1) {
                dist[b] = dist[a] + 1;
                changed = true;
            }
        }
        if !changed {
            return dist;
        }
    }
}

/// Multiset of Serre weights, as ordered (weight, multiplicity) pairs.
pub type WeightMultiset = BTreeMap<SerreWeight, u64>;

/// Computes the constituent multiset of the degree-`n` induced module of a
/// Borel character, by the filtration recursion with the rank-one case as
/// base.  Memoised on `(n, character)`.
pub struct JhCalc {
    m: NMonoid,
    memo: BTreeMap<(u32, BorelCharacter), WeightMultiset>,
}

impl JhCalc {
    pub fn new(m: &NMonoid) -> JhCalc {
        JhCalc { m: *m, memo: BTreeMap::new() }
    }

    pub fn jh_multiset(&mut self, n: u32, chi: BorelCharacter) -> WeightMultiset {
        assert!(n >= 1);
        if let Some(hit) = self.memo.get(&(n, chi)) {
            return hit.clone();
        }
        let m = self.m;
        let result = if n == 1 {
            let mut out = WeightMultiset::new();
            for set in CarrySet::enumerate(m.f) {
                if m.is_admissible(set, chi.r) {
                    let w = SerreWeight::new(
                        &m,
                        m.add(chi.det_twist, s_j(&m, chi.r, set)),
                        &t_j(&m, chi.r, set),
                    );
                    *out.entry(w).or_insert(0) += 1;
                }
            }
            out
        } else {
            let mut out = WeightMultiset::new();
            for beta in m.enumerate() {
                for (w, count) in self.jh_multiset(n - 1, chi.eta_shift(&m, beta)) {
                    *out.entry(w).or_insert(0) += count;
                }
            }
            out
        };
        self.memo.insert((n, chi), result.clone());
        result
    }
}

pub fn multiset_dimension(m: &NMonoid, ms: &WeightMultiset) -> u64 {
    ms.iter().map(|(w, count)| w.dimension(m.f) * count).sum()
}

/// All `(J, I)` with `J` disjoint from `I - 1`, sorted.
pub fn theta1_enumerate(f: usize) -> Vec<UnramTheta> {
    let mut out = Vec::new();
    for i in CarrySet::enumerate(f) {
        let shifted = i.shift_down(1, f);
        for j in CarrySet::enumerate(f) {
            if j.intersection(shifted).is_empty() {
                out.push(UnramTheta { j, i });
            }
        }
    }
    out.sort_unstable();
    out
}

/// The partial order on the unramified index set: `(J', I') <= (J, I)` when
/// `I' <= I` and `J' <= J + ((I \ I') - 1)`.
pub fn unram_leq(f: usize, a: UnramTheta, b: UnramTheta) -> bool {
    a.i.is_subset(b.i) && a.j.is_subset(b.j.union(b.i.difference(a.i).shift_down(1, f)))
}

/// The weight `det^{p^I} sigma_J(r - 2 p^I)` attached to `(J, I)`.
pub fn unram_sigma(m: &NMonoid, theta: UnramTheta, r: NClass) -> SerreWeight {
    let pi = m.p_of_set(theta.i);
    let r2 = m.sub_group(r, m.add(pi, pi)).expect("r is non-zero");
    SerreWeight::new(m, m.add(pi, s_j(m, r2, theta.j)), &t_j(m, r2, theta.j))
}

/// The basis label `(s_J(r - 2 p^I), p^I)` whose spin is the submodule
/// attached to `(J, I)`.
pub fn unram_f_index(m: &NMonoid, theta: UnramTheta, r: NClass) -> ThetaElem {
    let pi = m.p_of_set(theta.i);
    let r2 = m.sub_group(r, m.add(pi, pi)).expect("r is non-zero");
    ThetaElem::finite(s_j(m, r2, theta.j), pi)
}

/// Errors from the digit recipes on subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightError {
    /// `gamma_of_j` needs a non-empty subset.
    EmptySet,
    /// `gamma_of_j` needs every digit of `r` in `1..=p-2`.
    DigitOutOfRange,
}

impl fmt::Display for WeightError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightError::EmptySet => write!(out, "the subset must be non-empty"),
            WeightError::DigitOutOfRange => {
                write!(out, "every digit of r must lie in 1..=p-2")
            }
        }
    }
}

/// The level `gamma(J)` whose attached constituent is the twist-free weight:
/// digits `0 / -1 / r_i + 1 / r_i` by boundary position, evaluated as an
/// integer modulo `q - 1` with the non-zero convention.
pub fn gamma_of_j(m: &NMonoid, set: CarrySet, r: NClass) -> Result<NClass, WeightError> {
    if set.is_empty() {
        return Err(WeightError::EmptySet);
    }
    for i in 0..m.f {
        let ri = r.digit(i, m.f) as u64;
        if ri < 1 || ri > m.p - 2 {
            return Err(WeightError::DigitOutOfRange);
        }
    }
    let mut total: i64 = 0;
    for i in 0..m.f {
        let prev = (i + m.f - 1) % m.f;
        let ri = r.digit(i, m.f) as i64;
        let digit: i64 = match (set.contains(prev), set.contains(i)) {
            (false, false) => 0,
            (true, false) => -1,
            (false, true) => ri + 1,
            (true, true) => ri,
        };
        total += digit * (m.p as i64).pow(i as u32);
    }
    let n = (m.q() - 1) as i64;
    let rep = (total - 1).rem_euclid(n) + 1;
    Ok(m.from_integer(rep as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m31() -> NMonoid {
        NMonoid::new(3, 1)
    }

    #[test]
    fn s_table_boundary_cases() {
        let m = NMonoid::new(3, 2);
        for r in m.enumerate().skip(1) {
            assert_eq!(s_j(&m, r, CarrySet::EMPTY), m.zero());
            assert_eq!(s_j(&m, r, CarrySet::full(2)), r);
            let w = sigma_j(&m, r, CarrySet::EMPTY);
            assert_eq!(w.twist(), m.zero());
            assert_eq!(w.sym_digits(2), r.digits(2));
            assert_eq!(
                w.dimension(2),
                (r.digit(0, 2) as u64 + 1) * (r.digit(1, 2) as u64 + 1)
            );
        }
    }

    #[test]
    fn sigma_full_at_trivial_character_is_trivial() {
        // sigma_{Z/fZ}(q-1) = F(q-1, q-1) = F(0, 0)
        for (p, f) in [(3u64, 1usize), (5, 1), (3, 2)] {
            let m = NMonoid::new(p, f);
            let w = sigma_j(&m, m.q_minus_one(), CarrySet::full(f));
            assert_eq!(w.twist(), m.zero());
            assert!(w.sym_digits(f).iter().all(|&t| t == 0));
            assert_eq!(w.dimension(f), 1);
        }
    }

    #[test]
    fn f1_full_set_weight_is_twisted_complement() {
        // for f = 1 the predecessor of 0 is 0 itself, so J = {0} uses the
        // interior branch: s = r and t = p - 1 - r
        let p = 7;
        let m = NMonoid::new(p, 1);
        let r = m.from_integer(3);
        assert_eq!(s_j(&m, r, CarrySet::singleton(0)), r);
        assert_eq!(t_j(&m, r, CarrySet::singleton(0)), vec![(p - 1 - 3) as u8]);
        let w = sigma_j(&m, r, CarrySet::singleton(0));
        assert_eq!(w.dimension(1), p - 3);
    }

    #[test]
    fn weight_twist_normalisation() {
        let m = m31();
        let a = SerreWeight::new(&m, m.q_minus_one(), &[1]);
        let b = SerreWeight::new(&m, m.zero(), &[1]);
        assert_eq!(a, b);
        assert_eq!(SerreWeight::new(&m, m.zero(), &[0]).dimension(1), 1);
    }

    #[test]
    fn upsilon_examples() {
        let m = NMonoid::new(5, 1);
        let r = m.from_integer(1);
        let j1 = m.zero();
        assert_eq!(
            upsilon(&m, ThetaElem::finite(m.zero(), j1), r),
            RamType::new(CarrySet::EMPTY, j1)
        );
        assert_eq!(
            upsilon(&m, ThetaElem::infinity(j1), r),
            RamType::new(CarrySet::EMPTY, j1)
        );
        // r - 2 j1 = 1; the label (2, 0) has carry set of 2 + (1 - 2) = {0}
        assert_eq!(
            upsilon(&m, ThetaElem::finite(m.from_integer(2), j1), r),
            RamType::new(CarrySet::singleton(0), j1)
        );
        // when r - 2 j1 = q - 1, the label q-1 maps to the full set
        let m3 = NMonoid::new(3, 1);
        let r3 = m3.q_minus_one();
        assert_eq!(
            upsilon(&m3, ThetaElem::finite(m3.q_minus_one(), m3.zero()), r3),
            RamType::new(CarrySet::full(1), m3.zero())
        );
    }

    #[test]
    fn closed_order_same_level_is_inclusion() {
        for (p, f) in [(3u64, 1usize), (3, 2)] {
            let m = NMonoid::new(p, f);
            for r in m.enumerate().skip(1) {
                for &a in &admissible_types(&m, r) {
                    assert!(leq_r_closed(&m, a, a, r));
                    for &b in &admissible_types(&m, r) {
                        if a.gamma == b.gamma {
                            assert_eq!(leq_r_closed(&m, a, b, r), a.set.is_subset(b.set));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn closed_order_is_a_partial_order() {
        for (p, f) in [(3u64, 1usize), (5, 1), (3, 2)] {
            let m = NMonoid::new(p, f);
            for r in m.enumerate().skip(1) {
                let types = admissible_types(&m, r);
                for &a in &types {
                    for &b in &types {
                        if leq_r_closed(&m, a, b, r) && leq_r_closed(&m, b, a, r) {
                            assert_eq!(a, b);
                        }
                        for &c in &types {
                            if leq_r_closed(&m, a, b, r) && leq_r_closed(&m, b, c, r) {
                                assert!(leq_r_closed(&m, a, c, r));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn generated_order_equivalences() {
        let m = NMonoid::new(5, 1);
        let r = m.from_integer(1);
        let ord = GeneratedOrder::build(&m, r);
        // 2p classes in the rank-one residue case
        assert_eq!(ord.class_count(), 10);
        for j1 in m.enumerate() {
            assert_eq!(
                ord.class_of(ThetaElem::finite(m.zero(), j1)),
                ord.class_of(ThetaElem::infinity(j1))
            );
            for j0 in m.enumerate() {
                if !j0.is_zero() {
                    let mirror = m.sub_group(r_minus_2gamma(&m, r, j1), j0).unwrap();
                    assert_eq!(
                        ord.class_of(ThetaElem::finite(j0, j1)),
                        ord.class_of(ThetaElem::finite(mirror, j1))
                    );
                }
            }
        }
    }

    #[test]
    fn generated_order_matches_closed_form_small() {
        let m = NMonoid::new(3, 1);
        for r in m.enumerate().skip(1) {
            let ord = GeneratedOrder::build(&m, r);
            let types = admissible_types(&m, r);
            assert_eq!(ord.class_count(), types.len());
            for &a in &types {
                for &b in &types {
                    let ca = (0..ord.class_count())
                        .find(|&c| ord.class_type(c, r) == a)
                        .unwrap();
                    let cb = (0..ord.class_count())
                        .find(|&c| ord.class_type(c, r) == b)
                        .unwrap();
                    assert_eq!(
                        ord.leq_classes(ca, cb),
                        leq_r_closed(&m, a, b, r),
                        "r={r:?} a={a:?} b={b:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn gamma_graph_levels() {
        let m = NMonoid::new(5, 1);
        let r = m.from_integer(1);
        let g = GammaGraph::build(&m, r);
        let top = g.vertex_index(RamType::new(CarrySet::full(1), m.q_minus_one())).unwrap();
        let bottom = g.vertex_index(RamType::new(CarrySet::EMPTY, m.zero())).unwrap();
        assert_eq!(g.level_up[top], 0);
        assert_eq!(g.level_down[bottom], 0);
        // every vertex is on a path from top to bottom
        for v in 0..g.vertices.len() {
            assert_ne!(g.level_up[v], u32::MAX);
            assert_ne!(g.level_down[v], u32::MAX);
        }
        assert_eq!(g.depth(), g.level_down[top]);
        assert_eq!(g.depth(), g.level_up[bottom]);
    }

    #[test]
    fn gamma_graph_exceptional_levels() {
        // r = p - 3: the only vertex above (full, q-2) is (full, q-1)
        let m = NMonoid::new(5, 1);
        let r = m.from_integer(2);
        let g = GammaGraph::build(&m, r);
        let v = g.vertex_index(RamType::new(CarrySet::full(1), m.from_integer(3))).unwrap();
        assert_eq!(g.level_up[v], 1);
        // at exceptional gamma the two one-level types share the down level
        for gamma in m.enumerate() {
            if r_minus_2gamma(&m, r, gamma) == m.q_minus_one() {
                let a = g.vertex_index(RamType::new(CarrySet::EMPTY, gamma)).unwrap();
                let b = g.vertex_index(RamType::new(CarrySet::full(1), gamma)).unwrap();
                assert_eq!(g.level_down[a], g.level_down[b]);
            }
        }
    }

    #[test]
    fn jh_counts_and_dimensions() {
        // n = 1, f = 1: both subsets are always admissible
        let m = m31();
        let mut calc = JhCalc::new(&m);
        for r in m.enumerate().skip(1) {
            let chi = BorelCharacter::new(&m, m.zero(), r);
            let ms = calc.jh_multiset(1, chi);
            let count: u64 = ms.values().sum();
            assert_eq!(count, 2);
            assert_eq!(multiset_dimension(&m, &ms), 4); // q + 1
        }
        // n = 2 at q = p: 2p constituents of total dimension (q+1) q
        let chi = BorelCharacter::new(&m, m.zero(), m.from_integer(1));
        let ms = calc.jh_multiset(2, chi);
        assert_eq!(ms.values().sum::<u64>(), 6);
        assert_eq!(multiset_dimension(&m, &ms), 12);
        // n = 3 dimension bookkeeping
        let ms3 = calc.jh_multiset(3, chi);
        assert_eq!(multiset_dimension(&m, &ms3), 4 * 9);
    }

    #[test]
    fn theta1_enumeration_sizes() {
        assert_eq!(theta1_enumerate(1).len(), 3);
        assert_eq!(theta1_enumerate(2).len(), 9);
        // the pair (empty, full) is the unique maximum
        for f in [1usize, 2, 3] {
            let all = theta1_enumerate(f);
            let max = UnramTheta { j: CarrySet::EMPTY, i: CarrySet::full(f) };
            assert!(all.contains(&max));
            for &t in &all {
                assert!(unram_leq(f, t, max));
                assert_eq!(unram_leq(f, max, t), t == max);
            }
        }
    }

    #[test]
    fn unram_order_generated_by_covering_moves() {
        // the order is the reflexive-transitive closure of removing one
        // element of J, or trading i in I for i-1 in J
        for f in [1usize, 2, 3] {
            let all = theta1_enumerate(f);
            let idx: BTreeMap<UnramTheta, usize> =
                all.iter().enumerate().map(|(n, &t)| (t, n)).collect();
            let n = all.len();
            let mut reach = vec![false; n * n];
            for (a, &t) in all.iter().enumerate() {
                reach[a * n + a] = true;
                for j in t.j.iter(f) {
                    let smaller =
                        UnramTheta { j: t.j.difference(CarrySet::singleton(j)), i: t.i };
                    reach[idx[&smaller] * n + a] = true;
                }
                for i in t.i.iter(f) {
                    let prev = (i + f - 1) % f;
                    let smaller = UnramTheta {
                        j: t.j.union(CarrySet::singleton(prev)),
                        i: t.i.difference(CarrySet::singleton(i)),
                    };
                    if smaller.j.intersection(smaller.i.shift_down(1, f)).is_empty() {
                        reach[idx[&smaller] * n + a] = true;
                    }
                }
            }
            loop {
                let mut changed = false;
                for a in 0..n {
                    for b in 0..n {
                        if reach[a * n + b] {
                            for c in 0..n {
                                if reach[b * n + c] && !reach[a * n + c] {
                                    reach[a * n + c] = true;
                                    changed = true;
                                }
                            }
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            for (a, &ta) in all.iter().enumerate() {
                for (b, &tb) in all.iter().enumerate() {
                    assert_eq!(reach[a * n + b], unram_leq(f, ta, tb), "f={f} {ta:?} {tb:?}");
                }
            }
        }
    }

    #[test]
    fn unram_weight_and_label_examples() {
        let m = NMonoid::new(7, 1);
        let r = m.from_integer(3);
        let empty = UnramTheta { j: CarrySet::EMPTY, i: CarrySet::EMPTY };
        assert_eq!(unram_f_index(&m, empty, r), ThetaElem::finite(m.zero(), m.zero()));
        let w = unram_sigma(&m, empty, r);
        assert_eq!(w.twist(), m.zero());
        assert_eq!(w.sym_digits(1), &[3]);
        // the maximal element generates from the label (0, 1 + ... + p^{f-1})
        let max = UnramTheta { j: CarrySet::EMPTY, i: CarrySet::full(1) };
        assert_eq!(
            unram_f_index(&m, max, r),
            ThetaElem::finite(m.zero(), m.from_integer(1))
        );
        // ({0}, empty): s_{0}(3) = 3 by the cyclic convention, weight det^3 Sym^3
        let mid = UnramTheta { j: CarrySet::singleton(0), i: CarrySet::EMPTY };
        assert_eq!(
            unram_f_index(&m, mid, r),
            ThetaElem::finite(m.from_integer(3), m.zero())
        );
        let wm = unram_sigma(&m, mid, r);
        assert_eq!(wm.twist(), m.from_integer(3));
        assert_eq!(wm.sym_digits(1), &[3]);
    }

    #[test]
    fn gamma_of_j_recipe() {
        let m = NMonoid::new(3, 2);
        let r = m.from_digits(&[1, 1]);
        assert_eq!(gamma_of_j(&m, CarrySet::full(2), r).unwrap(), r);
        let g0 = gamma_of_j(&m, CarrySet::singleton(0), r).unwrap();
        assert_eq!(g0, m.from_digits(&[1, 2]));
        let g1 = gamma_of_j(&m, CarrySet::singleton(1), r).unwrap();
        assert_eq!(g1, m.from_digits(&[2, 1]));
        // the two singleton levels are incomparable
        assert!(!m.leq(g0, g1) && !m.leq(g1, g0));
        assert!(gamma_of_j(&m, CarrySet::EMPTY, r).is_err());
        assert!(gamma_of_j(&m, CarrySet::full(2), m.from_digits(&[0, 1])).is_err());
        // the attached weight is the twist-free one
        for set in [CarrySet::singleton(0), CarrySet::singleton(1), CarrySet::full(2)] {
            let gamma = gamma_of_j(&m, set, r).unwrap();
            let w = SerreWeight::new(
                &m,
                m.add(gamma, s_j(&m, r_minus_2gamma(&m, r, gamma), set)),
                &t_j(&m, r_minus_2gamma(&m, r, gamma), set),
            );
            assert_eq!(w, SerreWeight::new(&m, m.zero(), r.digits(2)));
        }
    }

    #[test]
    fn borel_character_shift() {
        let m = NMonoid::new(5, 1);
        let chi = BorelCharacter::new(&m, m.zero(), m.from_integer(1));
        let shifted = chi.eta_shift(&m, m.from_integer(1));
        assert_eq!(shifted.det_twist, m.from_integer(1));
        assert_eq!(shifted.r, m.from_integer(3)); // 1 - 2 = -1 = 3 mod 4
    }
}
