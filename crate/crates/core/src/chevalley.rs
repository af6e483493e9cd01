//! Chevalley basis of a simple Lie algebra.
//!
//! Basis: simple coroots `h_1..h_l`, then one root vector `e_alpha` per root in
//! root-system order. Relations:
//!
//! * `[h_i, e_b] = <b, alpha_i^vee> e_b`
//! * `[e_a, e_-a] = h_a` (the coroot of `a`)
//! * `[e_a, e_b] = N(a, b) e_(a+b)` when `a + b` is a root
//!
//! The signs of `N` are fixed by declaring `N(g, d) = +(p+1)` on every
//! extraspecial pair `(g, d)` (for a height-compatible order on the positive
//! roots) and deriving the rest from the usual coherence identities, with the
//! convention `N(-a, -b) = -N(a, b)`.

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, rat, RatMatrix, Rational};
use crate::rootsys::RootSystem;

pub use crate::linalg::{charpoly_low_coeffs, kernel_dim};

/// Matrix of `ad X` in the Chevalley basis; column `j` holds `[X, b_j]`.
pub type AdjointMatrix = RatMatrix;

/// An element of `g` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GElement {
    /// Coordinates over the simple coroots.
    pub cartan: Vec<Rational>,
    /// Root-vector coordinates keyed by root index; zero entries are never stored.
    pub roots: BTreeMap<usize, Rational>,
}

impl GElement {
    pub fn zero(rank: usize) -> Self {
        GElement {
            cartan: vec![Rational::zero(); rank],
            roots: BTreeMap::new(),
        }
    }

    pub fn root_vector(rank: usize, root: usize) -> Self {
        let mut x = Self::zero(rank);
        x.roots.insert(root, rat(1));
        x
    }

    pub fn coroot(rank: usize, i: usize) -> Self {
        let mut x = Self::zero(rank);
        x.cartan[i] = rat(1);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.roots.is_empty() && self.cartan.iter().all(Zero::is_zero)
    }

    pub fn add_root(&mut self, root: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let entry = self.roots.entry(root).or_insert_with(Rational::zero);
        *entry += v;
        if entry.is_zero() {
            self.roots.remove(&root);
        }
    }

    pub fn add_assign(&mut self, other: &GElement) {
        for (c, o) in self.cartan.iter_mut().zip(&other.cartan) {
            *c += o;
        }
        for (&k, v) in &other.roots {
            self.add_root(k, v);
        }
    }

    pub fn scale(&self, s: &Rational) -> GElement {
        if s.is_zero() {
            return GElement::zero(self.cartan.len());
        }
        GElement {
            cartan: self.cartan.iter().map(|c| c * s).collect(),
            roots: self.roots.iter().map(|(&k, v)| (k, v * s)).collect(),
        }
    }

    /// Coordinates in basis order (coroots, then roots).
    pub fn to_coords(&self, n_roots: usize) -> Vec<Rational> {
        let mut v = self.cartan.clone();
        v.extend(std::iter::repeat_n(Rational::zero(), n_roots));
        let l = self.cartan.len();
        for (&k, x) in &self.roots {
            v[l + k] = x.clone();
        }
        v
    }

    pub fn from_coords(rank: usize, coords: &[Rational]) -> Self {
        let mut x = GElement::zero(rank);
        x.cartan.clone_from_slice(&coords[..rank]);
        for (k, v) in coords[rank..].iter().enumerate() {
            x.add_root(k, v);
        }
        x
    }

    /// Serializable view with roots written as coefficient vectors.
    pub fn describe(&self, rs: &RootSystem) -> GElementJson {
        GElementJson {
            cartan: self.cartan.iter().map(|c| c.to_string()).collect(),
            roots: self
                .roots
                .iter()
                .map(|(&k, v)| RootTerm {
                    root: rs.roots[k].coeffs.clone(),
                    value: v.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootTerm {
    pub root: Vec<i32>,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GElementJson {
    pub cartan: Vec<String>,
    pub roots: Vec<RootTerm>,
}

/// Signed structure constants for a fixed root system.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    pub rs: RootSystem,
    n_roots: usize,
    /// `sum[a * n + b]` = index of `a + b` when it is a root.
    sum: Vec<Option<usize>>,
    /// `n[a * n + b]` = `N(a, b)`, zero when `a + b` is not a root.
    n: Vec<i64>,
    neg: Vec<usize>,
    coroots: Vec<Vec<i32>>,
    /// `pairing[b][i] = <b, alpha_i^vee>`.
    pairing: Vec<Vec<i32>>,
}

/// Builds the Chevalley structure constants for `rs`.
pub fn structure_constants(rs: &RootSystem) -> StructureConstants {
    StructureConstants::new(rs.clone())
}

struct SignSolver<'a> {
    rs: &'a RootSystem,
    sum: &'a [Option<usize>],
    neg: &'a [usize],
    norms: Vec<i64>,
    /// extraspecial pair for each positive non-simple root
    extraspecial: Vec<Option<(usize, usize)>>,
    memo: Vec<Option<i64>>,
}

impl SignSolver<'_> {
    fn n_roots(&self) -> usize {
        self.rs.roots.len()
    }

    fn is_pos(&self, a: usize) -> bool {
        self.rs.roots[a].height > 0
    }

    fn root_sum(&self, a: usize, b: usize) -> Option<usize> {
        self.sum[a * self.n_roots() + b]
    }

    /// Largest `p` with `b - p a` a root.
    fn string_below(&self, a: usize, b: usize) -> i64 {
        let mut p = 0;
        let mut cur = b;
        while let Some(next) = self.root_sum(self.neg[a], cur) {
            p += 1;
            cur = next;
        }
        p
    }

    fn get(&mut self, a: usize, b: usize) -> i64 {
        let key = a * self.n_roots() + b;
        if let Some(v) = self.memo[key] {
            return v;
        }
        let sum = self
            .root_sum(a, b)
            .expect("structure constant requested for a non-root sum");
        let v = match (self.is_pos(a), self.is_pos(b)) {
            (true, true) => self.positive(a, b, sum),
            (false, false) => -self.get(self.neg[a], self.neg[b]),
            _ => {
                // a + b + c = 0 gives N(a,b)/|c|^2 = N(b,c)/|a|^2 = N(c,a)/|b|^2
                let c = self.neg[sum];
                let nc = Rational64::from_integer(self.norms[c]);
                let q = if self.is_pos(b) == self.is_pos(c) {
                    nc / self.norms[a] * self.get(b, c)
                } else {
                    nc / self.norms[b] * self.get(c, a)
                };
                assert!(q.is_integer(), "non-integral structure constant");
                q.to_integer()
            }
        };
        self.memo[key] = Some(v);
        v
    }

    fn positive(&mut self, a: usize, b: usize, xi: usize) -> i64 {
        let (g, d) = self.extraspecial[xi].expect("sum of positive roots is not simple");
        let p1 = self.string_below(g, d) + 1;
        if a == g {
            return p1;
        }
        if b == g {
            return -p1;
        }
        // four-term identity on (a, b, -g, -d), with N(-g, -d) = -p1
        let (ng, nd) = (self.neg[g], self.neg[d]);
        let mut acc = Rational64::zero();
        if let Some(bg) = self.root_sum(b, ng) {
            let t = self.get(b, ng) * self.get(a, nd);
            acc += Rational64::new(t, self.norms[bg]);
        }
        if let Some(ag) = self.root_sum(a, ng) {
            let t = self.get(ng, a) * self.get(b, nd);
            acc += Rational64::new(t, self.norms[ag]);
        }
        let v = acc * Rational64::new(self.norms[xi], p1);
        assert!(v.is_integer(), "non-integral structure constant");
        v.to_integer()
    }
}

impl StructureConstants {
    pub fn new(rs: RootSystem) -> Self {
        let n = rs.roots.len();
        let l = rs.rank();
        let mut sum = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                sum[a * n + b] = rs.sum_index(a, b);
            }
        }
        let neg: Vec<usize> = (0..n).map(|a| rs.negative_index(a)).collect();
        let norms: Vec<i64> = (0..n).map(|a| rs.norm2(a) as i64).collect();

        // height-compatible total order on positive roots
        let mut positive: Vec<usize> = (0..n).filter(|&a| rs.roots[a].height > 0).collect();
        positive.sort_by(|&x, &y| {
            (rs.roots[x].height, &rs.roots[x].coeffs).cmp(&(rs.roots[y].height, &rs.roots[y].coeffs))
        });
        let mut extraspecial = vec![None; n];
        for &xi in &positive {
            for &g in &positive {
                if let Some(d) = rs.index_of(
                    &rs.roots[xi]
                        .coeffs
                        .iter()
                        .zip(&rs.roots[g].coeffs)
                        .map(|(x, y)| x - y)
                        .collect::<Vec<_>>(),
                ) {
                    if rs.roots[d].height > 0 {
                        extraspecial[xi] = Some((g, d));
                        break;
                    }
                }
            }
        }

        let mut solver = SignSolver {
            rs: &rs,
            sum: &sum,
            neg: &neg,
            norms,
            extraspecial,
            memo: vec![None; n * n],
        };
        let mut table = vec![0i64; n * n];
        for a in 0..n {
            for b in 0..n {
                if sum[a * n + b].is_some() {
                    table[a * n + b] = solver.get(a, b);
                }
            }
        }

        let coroots = (0..n).map(|a| rs.coroot_coeffs(a)).collect();
        let pairing = (0..n)
            .map(|b| (0..l).map(|i| rs.pairing_with_coroot(b, i)).collect())
            .collect();
        StructureConstants {
            rs,
            n_roots: n,
            sum,
            n: table,
            neg,
            coroots,
            pairing,
        }
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn dim(&self) -> usize {
        self.rank() + self.n_roots
    }

    /// `N(a, b)`, or `None` when `a + b` is not a root.
    pub fn n(&self, a: usize, b: usize) -> Option<i64> {
        self.sum[a * self.n_roots + b].map(|_| self.n[a * self.n_roots + b])
    }

    pub fn root_sum(&self, a: usize, b: usize) -> Option<usize> {
        self.sum[a * self.n_roots + b]
    }

    pub fn negative(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// Largest `p >= 0` with `b - p a` a root.
    pub fn string_below(&self, a: usize, b: usize) -> i64 {
        let mut p = 0;
        let mut cur = b;
        while let Some(next) = self.root_sum(self.neg[a], cur) {
            p += 1;
            cur = next;
        }
        p
    }

    /// `[X, Y]`.
    pub fn bracket(&self, x: &GElement, y: &GElement) -> GElement {
        let l = self.rank();
        let mut out = GElement::zero(l);
        for (&b, yb) in &y.roots {
            let w: Rational = (0..l)
                .filter(|&i| !x.cartan[i].is_zero())
                .map(|i| &x.cartan[i] * rat(self.pairing[b][i] as i64))
                .sum();
            out.add_root(b, &(w * yb));
        }
        for (&a, xa) in &x.roots {
            let w: Rational = (0..l)
                .filter(|&i| !y.cartan[i].is_zero())
                .map(|i| &y.cartan[i] * rat(self.pairing[a][i] as i64))
                .sum();
            out.add_root(a, &(-w * xa));
            for (&b, yb) in &y.roots {
                if b == self.neg[a] {
                    let c = xa * yb;
                    for (i, k) in self.coroots[a].iter().enumerate() {
                        out.cartan[i] += &c * rat(*k as i64);
                    }
                } else if let Some(s) = self.root_sum(a, b) {
                    out.add_root(s, &(xa * yb * rat(self.n[a * self.n_roots + b])));
                }
            }
        }
        out
    }

    /// The `i`-th basis vector (coroots first, then roots).
    pub fn basis(&self, j: usize) -> GElement {
        let l = self.rank();
        if j < l {
            GElement::coroot(l, j)
        } else {
            GElement::root_vector(l, j - l)
        }
    }

    /// Matrix of `ad X`.
    pub fn ad(&self, x: &GElement) -> AdjointMatrix {
        let d = self.dim();
        let mut m = RatMatrix::zeros(d, d);
        for j in 0..d {
            let col = self.bracket(x, &self.basis(j)).to_coords(self.n_roots);
            for (i, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// `rho^vee`, the element of the Cartan acting by `ht(alpha)` on `e_alpha`.
    pub fn rho_check(&self) -> GElement {
        let l = self.rank();
        let a = RatMatrix::from_rows(
            (0..l)
                .map(|j| (0..l).map(|i| rat(self.rs.cartan_matrix[i][j] as i64)).collect())
                .collect(),
        );
        let ones = vec![Rational::one(); l];
        let c = linalg::solve(&a, &ones).expect("Cartan matrix is invertible");
        GElement {
            cartan: c,
            roots: BTreeMap::new(),
        }
    }

    /// Element `sum_{ht(alpha) = k} coeff * e_alpha`.
    pub fn height_sum(&self, k: i32) -> GElement {
        let mut x = GElement::zero(self.rank());
        for idx in self.rs.indices_of_height(k) {
            x.add_root(idx, &rat(1));
        }
        x
    }

    /// Looks up a root by coefficient vector.
    pub fn root_index(&self, coeffs: &[i32]) -> Result<usize> {
        self.rs
            .index_of(coeffs)
            .ok_or_else(|| Error::UnknownRoot(coeffs.to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{Family, SimpleType};
    use proptest::prelude::*;

    fn sc(f: Family, l: usize) -> StructureConstants {
        structure_constants(&RootSystem::new(SimpleType::new(f, l).unwrap()).unwrap())
    }

    fn jacobi(s: &StructureConstants, i: usize, j: usize, k: usize) -> bool {
        let (x, y, z) = (s.basis(i), s.basis(j), s.basis(k));
        let mut t = s.bracket(&x, &s.bracket(&y, &z));
        t.add_assign(&s.bracket(&y, &s.bracket(&z, &x)));
        t.add_assign(&s.bracket(&z, &s.bracket(&x, &y)));
        t.is_zero()
    }

    #[test]
    fn jacobi_full_sweep_small_ranks() {
        for ty in SimpleType::all_up_to(4) {
            let s = structure_constants(&RootSystem::new(ty).unwrap());
            let d = s.dim();
            for i in 0..d {
                for j in i + 1..d {
                    for k in j + 1..d {
                        assert!(jacobi(&s, i, j, k), "{ty}: Jacobi fails on ({i},{j},{k})");
                    }
                }
            }
        }
    }

    #[test]
    fn magnitudes_are_string_lengths() {
        for ty in SimpleType::all_up_to(8) {
            let s = structure_constants(&RootSystem::new(ty).unwrap());
            let n = s.rs.roots.len();
            for a in 0..n {
                for b in 0..n {
                    if let Some(v) = s.n(a, b) {
                        assert_eq!(v.abs(), s.string_below(a, b) + 1, "{ty}");
                        assert_eq!(v, -s.n(b, a).unwrap());
                        assert_eq!(v, -s.n(s.negative(a), s.negative(b)).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn small_examples() {
        let a1 = sc(Family::A, 1);
        let (e, f) = (a1.rs.index_of(&[1]).unwrap(), a1.rs.index_of(&[-1]).unwrap());
        let h = a1.bracket(&GElement::root_vector(1, e), &GElement::root_vector(1, f));
        assert_eq!(h, GElement::coroot(1, 0));

        let a2 = sc(Family::A, 2);
        let (x, y) = (a2.rs.simple_roots[0], a2.rs.simple_roots[1]);
        assert_eq!(a2.n(x, y).unwrap().abs(), 1);

        let g2 = sc(Family::G, 2);
        let max = (0..12)
            .flat_map(|a| (0..12).map(move |b| (a, b)))
            .filter_map(|(a, b)| g2.n(a, b))
            .map(i64::abs)
            .max();
        assert_eq!(max, Some(3));
    }

    #[test]
    fn ad_examples() {
        let a1 = sc(Family::A, 1);
        assert!(a1.ad(&GElement::zero(1)).is_zero());
        let mut ef = GElement::zero(1);
        ef.add_root(0, &rat(1));
        ef.add_root(1, &rat(1));
        let m = a1.ad(&ef);
        assert_eq!(kernel_dim(&m), 1);
        assert_eq!(linalg::charpoly(&m), vec![rat(0), rat(-4), rat(0), rat(1)]);
        assert_eq!(charpoly_low_coeffs(&m, 1)[1], rat(-4));
    }

    #[test]
    fn rho_check_grades_by_height() {
        for ty in SimpleType::all_up_to(8) {
            let s = structure_constants(&RootSystem::new(ty).unwrap());
            let m = s.ad(&s.rho_check());
            let l = s.rank();
            for i in 0..s.dim() {
                for j in 0..s.dim() {
                    let want = if i == j && i >= l { rat(s.rs.roots[i - l].height as i64) } else { rat(0) };
                    assert_eq!(m.get(i, j), &want, "{ty}");
                }
            }
        }
    }

    #[test]
    fn principal_nilpotent_has_rank_dimensional_centralizer() {
        for ty in SimpleType::all_up_to(8) {
            let s = structure_constants(&RootSystem::new(ty).unwrap());
            let n1 = s.height_sum(-1);
            let m = s.ad(&n1);
            assert_eq!(kernel_dim(&m), s.rank(), "{ty}");
            assert!(charpoly_low_coeffs(&m, s.dim() - 1).iter().all(Zero::is_zero));
        }
    }

    fn element(rank: usize, n_roots: usize) -> impl Strategy<Value = GElement> {
        proptest::collection::vec(-3i64..=3, rank + n_roots).prop_map(move |v| {
            let coords: Vec<Rational> = v.into_iter().map(rat).collect();
            GElement::from_coords(rank, &coords)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn jacobi_sampled_exceptional(which in 0usize..3, i in 0usize..248, j in 0usize..248, k in 0usize..248) {
            thread_local! {
                static ALGEBRAS: Vec<StructureConstants> =
                    [6, 7, 8].iter().map(|&l| sc(Family::E, l)).collect();
            }
            ALGEBRAS.with(|alg| {
                let s = &alg[which];
                let d = s.dim();
                assert!(jacobi(s, i % d, j % d, k % d));
            });
        }

        #[test]
        fn ad_is_bracket_and_traceless(x in element(4, 48), y in element(4, 48)) {
            let s = sc(Family::F, 4);
            let m = s.ad(&x);
            prop_assert_eq!(m.trace(), rat(0));
            let yc = y.to_coords(48);
            let via_matrix: Vec<Rational> = (0..s.dim())
                .map(|i| (0..s.dim()).map(|j| m.get(i, j) * &yc[j]).sum())
                .collect();
            prop_assert_eq!(via_matrix, s.bracket(&x, &y).to_coords(48));
            // bilinearity
            let mut sum = x.clone();
            sum.add_assign(&y);
            let mut expect = s.ad(&x);
            let my = s.ad(&y);
            for i in 0..s.dim() { for j in 0..s.dim() { expect.add_to(i, j, my.get(i, j)); } }
            prop_assert_eq!(s.ad(&sum), expect);
            prop_assert!(kernel_dim(&m) >= s.rank());
        }
    }
}
