//! Exact linear algebra over the rationals.
//!
//! Rank and kernel dimension use fraction-free Bareiss elimination on the
//! connected blocks of the matrix. Characteristic polynomials are computed by
//! Hessenberg reduction modulo word-sized primes and lifted with the Chinese
//! remainder theorem; the number of primes is chosen from a Hadamard-type bound
//! on the coefficients, so the lift is exact.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    /// Least common multiple of all entry denominators.
    fn common_denominator(&self) -> BigInt {
        self.data
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// `D * self` as an integer matrix, where `D` is the common denominator.
    fn scaled_integer(&self) -> (BigInt, Vec<Vec<BigInt>>) {
        let d = self.common_denominator();
        let rows = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| (x * &d).to_integer())
                    .collect()
            })
            .collect();
        (d, rows)
    }
}

/// Disjoint-set forest used to split matrices into independent blocks.
struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Rank of an integer matrix by fraction-free Gaussian elimination.
///
/// After each pivot step every entry of the trailing block is a minor of the
/// input, so the division by the previous pivot is exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].bits())
        else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut v = &pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Exact rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    let (_, ints) = m.scaled_integer();
    // rows are nodes 0..R, columns R..R+C
    let (nr, nc) = (m.rows, m.cols);
    let mut dsu = Dsu::new(nr + nc);
    let mut touched = vec![false; nr];
    for (i, row) in ints.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                dsu.union(i, nr + j);
                touched[i] = true;
            }
        }
    }
    let mut blocks: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> = Default::default();
    for i in (0..nr).filter(|&i| touched[i]) {
        let root = dsu.find(i);
        blocks.entry(root).or_default().0.push(i);
    }
    for j in 0..nc {
        let root = dsu.find(nr + j);
        if let Some(b) = blocks.get_mut(&root) {
            b.1.push(j);
        }
    }
    blocks
        .values()
        .map(|(ri, ci)| {
            let sub = ri
                .iter()
                .map(|&i| ci.iter().map(|&j| ints[i][j].clone()).collect())
                .collect();
            bareiss_rank(sub)
        })
        .sum()
}

/// Dimension of the right kernel `{v : M v = 0}`.
pub fn kernel_dim(m: &RatMatrix) -> usize {
    m.cols - rank(m)
}

// ---------------------------------------------------------------------------
// modular characteristic polynomials

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

/// The first `count` primes below 2^62, descending.
fn primes(count: usize) -> Vec<u64> {
    let mut cache = PRIMES.lock().unwrap_or_else(|e| e.into_inner());
    let mut candidate = cache.last().copied().unwrap_or(1u64 << 62);
    while cache.len() < count {
        candidate -= 1;
        if is_prime_u64(candidate) {
            cache.push(candidate);
        }
    }
    cache[..count].to_vec()
}

/// Characteristic polynomial `det(x I - H)` modulo `p`, coefficients low to high.
/// `h` is consumed as workspace.
fn charpoly_mod(mut h: Vec<Vec<u64>>, p: u64) -> Vec<u64> {
    let n = h.len();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = pow_mod(h[j + 1][j], p - 2, p);
        for i in j + 2..n {
            if h[i][j] == 0 {
                continue;
            }
            let u = mul_mod(h[i][j], inv, p);
            let (upper, lower) = h.split_at_mut(i);
            let src = &upper[j + 1];
            let dst = &mut lower[0];
            for k in j..n {
                if src[k] != 0 {
                    dst[k] = (dst[k] + p - mul_mod(u, src[k], p)) % p;
                }
            }
            for row in h.iter_mut() {
                if row[i] != 0 {
                    row[j + 1] = (row[j + 1] + mul_mod(u, row[i], p)) % p;
                }
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1]);
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % p;
            next[k] = (next[k] + p - mul_mod(h[m][m], c, p)) % p;
        }
        let mut t = 1u64;
        for i in (0..m).rev() {
            t = mul_mod(t, h[i + 1][i], p);
            let coef = mul_mod(h[i][m], t, p);
            if coef == 0 {
                if t == 0 {
                    break;
                }
                continue;
            }
            for (k, &c) in polys[i].iter().enumerate() {
                next[k] = (next[k] + p - mul_mod(coef, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Exact characteristic polynomial of a square integer matrix, coefficients low to high.
fn charpoly_integer(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    // |c_k| <= e_{n-k}(column norms) <= prod (1 + ceil|col_j|)
    let mut bound = BigInt::one();
    for j in 0..n {
        let s: BigInt = a.iter().map(|row| &row[j] * &row[j]).sum();
        let mut u = s.sqrt();
        if &u * &u < s {
            u += 1;
        }
        bound *= u + 1;
    }
    let target = bound * 2 + 1;

    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut used = 0;
    while modulus <= target {
        used += 1;
        let p = *primes(used).last().unwrap();
        let pb = BigInt::from(p);
        let reduced: Vec<Vec<u64>> = a
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.mod_floor(&pb).to_u64().unwrap())
                    .collect()
            })
            .collect();
        let res = charpoly_mod(reduced, p);
        // x = acc + modulus * ((res - acc) * modulus^{-1} mod p)
        let m_mod = modulus.mod_floor(&pb).to_u64().unwrap();
        let m_inv = pow_mod(m_mod, p - 2, p);
        for (c, &r) in acc.iter_mut().zip(&res) {
            let cur = c.mod_floor(&pb).to_u64().unwrap();
            let delta = mul_mod((r + p - cur) % p, m_inv, p);
            if delta != 0 {
                *c += &modulus * BigInt::from(delta);
            }
        }
        modulus *= pb;
    }
    let half = &modulus / 2;
    for c in acc.iter_mut() {
        if *c > half {
            *c -= &modulus;
        }
    }
    acc
}

/// Exact characteristic polynomial `det(x I - M)`, coefficients of `x^0 .. x^n`.
///
/// The matrix is first split into blocks that are invariant under a
/// simultaneous row/column permutation; the polynomial is the product of the
/// block polynomials.
pub fn charpoly(m: &RatMatrix) -> Vec<Rational> {
    assert!(m.is_square(), "charpoly of a non-square matrix");
    let n = m.rows;
    let (d, ints) = m.scaled_integer();
    let mut dsu = Dsu::new(n);
    for (i, row) in ints.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                dsu.union(i, j);
            }
        }
    }
    let mut blocks: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let root = dsu.find(i);
        blocks.entry(root).or_default().push(i);
    }
    let mut poly = vec![BigInt::one()];
    for idx in blocks.values() {
        let sub: Vec<Vec<BigInt>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| ints[i][j].clone()).collect())
            .collect();
        let block = if idx.len() == 1 {
            vec![-sub[0][0].clone(), BigInt::one()]
        } else {
            charpoly_integer(&sub)
        };
        let mut next = vec![BigInt::zero(); poly.len() + block.len() - 1];
        for (i, a) in poly.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in block.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        poly = next;
    }
    // c_k(M) = c_k(D M) / D^(n-k)
    let mut scale = BigInt::one();
    let mut out = vec![Rational::zero(); n + 1];
    for k in (0..=n).rev() {
        out[k] = BigRational::new(poly[k].clone(), scale.clone());
        scale *= &d;
    }
    out
}

/// Coefficients of `x^0 .. x^upto` of `det(x I - M)`.
pub fn charpoly_low_coeffs(m: &RatMatrix, upto: usize) -> Vec<Rational> {
    assert!(upto <= m.rows, "upto exceeds the matrix dimension");
    let mut c = charpoly(m);
    c.truncate(upto + 1);
    c
}

/// Nilpotency via vanishing of the power traces `tr(M^k)`, `k = 1..n`.
///
/// Stops early once a power vanishes or a trace is nonzero.
pub fn is_nilpotent(m: &RatMatrix) -> bool {
    assert!(m.is_square());
    let n = m.rows;
    let (_, ints) = m.scaled_integer();
    let sparse: Vec<Vec<(usize, BigInt)>> = ints
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
        .collect();
    let mut power = ints;
    for k in 1..=n {
        let tr: BigInt = (0..n).map(|i| &power[i][i]).sum();
        if !tr.is_zero() {
            return false;
        }
        if power.iter().all(|row| row.iter().all(Zero::is_zero)) || k == n {
            return true;
        }
        power = power
            .iter()
            .map(|row| {
                let mut out = vec![BigInt::zero(); n];
                for (l, a) in row.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in &sparse[l] {
                        out[*j] += a * b;
                    }
                }
                out
            })
            .collect();
    }
    true
}

/// Solves the square system `A x = b` over the rationals. `None` when singular.
pub fn solve(a: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.rows;
    assert!(a.is_square() && b.len() == n);
    let mut aug: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(c, p);
        let inv = aug[c][c].recip();
        for x in aug[c].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = aug[c].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Lagrange data to monomial coefficients: the unique polynomial of degree
/// `< xs.len()` through the points, via Newton divided differences.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner expansion of the Newton form
    let mut poly = vec![Rational::zero(); n.max(1)];
    for i in (0..n).rev() {
        // poly = poly * (x - xs[i]) + dd[i]
        let mut next = vec![Rational::zero(); n.max(1)];
        for k in 0..n {
            if poly[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += &poly[k];
            }
            next[k] -= &poly[k] * &xs[i];
        }
        next[0] += &dd[i];
        poly = next;
    }
    poly
}
