//! Homogeneous Coxeter elements `N_r`, `E_r`, `A_r = N_r + E_r` and the gradings they live in.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::chevalley::{charpoly_low_coeffs, GElement, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg::{kernel_dim, rat, RatMatrix, Rational};
use crate::rootsys::{RootSystem, SimpleType};

/// Slope data `(r, m)` for the connection `d + t^-m (N_r + t^-1 E_r) dt/t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoxeterParams {
    pub ty: SimpleType,
    pub h: u32,
    pub r: u32,
    pub m: u32,
}

impl CoxeterParams {
    pub fn new(rs: &RootSystem, r: i64, m: i64) -> Result<Self> {
        let h = rs.h();
        check_slope(r, h)?;
        if m < 0 {
            return Err(Error::BadM(m));
        }
        Ok(CoxeterParams {
            ty: rs.ty,
            h,
            r: r as u32,
            m: m as u32,
        })
    }

    /// Every legal `r` for this Coxeter number, in increasing order.
    pub fn legal_r(h: u32) -> Vec<u32> {
        (1..h).filter(|r| r.gcd(&h) == 1).collect()
    }
}

fn check_slope(r: i64, h: u32) -> Result<()> {
    if r < 1 || r >= h as i64 || (r as u64).gcd(&(h as u64)) != 1 {
        return Err(Error::BadSlopeNumerator { r, h });
    }
    Ok(())
}

/// A Laurent polynomial `sum_d X_d t^d` with coefficients in `g`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LoopElement {
    pub terms: BTreeMap<i64, GElement>,
}

impl LoopElement {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monomial(x: GElement, degree: i64) -> Self {
        let mut l = Self::new();
        l.add_term(degree, &x);
        l
    }

    pub fn add_term(&mut self, degree: i64, x: &GElement) {
        if x.is_zero() {
            return;
        }
        match self.terms.get_mut(&degree) {
            Some(cur) => {
                cur.add_assign(x);
                if cur.is_zero() {
                    self.terms.remove(&degree);
                }
            }
            None => {
                self.terms.insert(degree, x.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LoopElement {
            terms: self.terms.iter().map(|(&d, x)| (d + k, x.clone())).collect(),
        }
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `[X t^a, Y t^b] = [X, Y] t^(a+b)`, extended bilinearly.
    pub fn bracket(&self, sc: &StructureConstants, other: &LoopElement) -> LoopElement {
        let mut out = LoopElement::new();
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                out.add_term(a + b, &sc.bracket(x, y));
            }
        }
        out
    }

    /// Evaluates at `t = t0`.
    pub fn specialize(&self, rank: usize, t0: &Rational) -> GElement {
        let mut out = GElement::zero(rank);
        for (&d, x) in &self.terms {
            out.add_assign(&x.scale(&pow(t0, d)));
        }
        out
    }
}

fn pow(t: &Rational, d: i64) -> Rational {
    let p = num_traits::pow(t.clone(), d.unsigned_abs() as usize);
    if d < 0 {
        p.recip()
    } else {
        p
    }
}

fn height_sum(rs: &RootSystem, k: i32) -> GElement {
    let mut x = GElement::zero(rs.rank());
    for idx in rs.indices_of_height(k) {
        x.add_root(idx, &rat(1));
    }
    x
}

/// `N_r`: the sum of root vectors over all roots of height `-r`.
pub fn build_nr(rs: &RootSystem, r: i64) -> Result<GElement> {
    check_slope(r, rs.h())?;
    Ok(height_sum(rs, -(r as i32)))
}

/// `E_r`: the sum of root vectors over all roots of height `h - r`.
pub fn build_er(rs: &RootSystem, r: i64) -> Result<GElement> {
    check_slope(r, rs.h())?;
    Ok(height_sum(rs, rs.h() as i32 - r as i32))
}

pub fn build_ar(rs: &RootSystem, r: i64) -> Result<GElement> {
    let mut a = build_nr(rs, r)?;
    a.add_assign(&build_er(rs, r)?);
    Ok(a)
}

/// `t^-m (N_r + t^-1 E_r)`, the matrix of the Coxeter connection.
pub fn connection_matrix(rs: &RootSystem, p: &CoxeterParams) -> LoopElement {
    let (r, m) = (p.r as i64, p.m as i64);
    let mut l = LoopElement::new();
    l.add_term(-m, &height_sum(rs, -(r as i32)));
    l.add_term(-m - 1, &height_sum(rs, p.h as i32 - r as i32));
    l
}

/// True iff `0` is a root of the adjoint characteristic polynomial with multiplicity exactly `l`.
pub fn is_regular_semisimple(sc: &StructureConstants, x: &GElement) -> bool {
    let l = sc.rank();
    let c = charpoly_low_coeffs(&sc.ad(x), l);
    c[..l].iter().all(Zero::is_zero) && !c[l].is_zero()
}

/// Dimension of the degree `i/h` piece of the loop algebra for the grading at the barycenter.
pub fn kmp_graded_dim(rs: &RootSystem, i: i64) -> usize {
    let h = rs.h() as i64;
    let cartan = if i.rem_euclid(h) == 0 { rs.rank() } else { 0 };
    let roots = rs
        .roots
        .iter()
        .filter(|a| (a.height as i64 - i).rem_euclid(h) == 0)
        .count();
    cartan + roots
}

/// Basis of the degree `-i/h` piece for `1 <= i <= h - 1`: pairs `(t-degree, root index)`.
fn piece_basis(rs: &RootSystem, i: i64) -> Vec<(i64, usize)> {
    let h = rs.h() as i64;
    let mut basis = Vec::new();
    for (idx, a) in rs.roots.iter().enumerate() {
        let ht = a.height as i64;
        if (ht + i).rem_euclid(h) == 0 {
            basis.push(((-i - ht).div_euclid(h), idx));
        }
    }
    basis
}

/// Dimension of the centralizer of `N_1 + t^-1 E_1` inside the degree `-i/h` piece.
pub fn coxeter_cartan_graded_dim(sc: &StructureConstants, i: i64) -> usize {
    let rs = &sc.rs;
    let h = rs.h() as i64;
    let i = i.rem_euclid(h);
    if i == 0 {
        // the Cartan piece at integer degree; A_1 is regular so only 0 survives there
        return 0;
    }
    let a1 = connection_matrix(
        rs,
        &CoxeterParams {
            ty: rs.ty,
            h: rs.h(),
            r: 1,
            m: 0,
        },
    );
    let basis = piece_basis(rs, i);
    let mut rows: BTreeMap<(i64, usize), usize> = BTreeMap::new();
    let mut columns = Vec::with_capacity(basis.len());
    let l = rs.rank();
    for &(d, idx) in &basis {
        let x = LoopElement::monomial(GElement::root_vector(l, idx), d);
        let y = a1.bracket(sc, &x);
        let mut col = Vec::new();
        for (&deg, g) in &y.terms {
            for (k, v) in g.to_coords(rs.roots.len()).into_iter().enumerate() {
                if !v.is_zero() {
                    let next = rows.len();
                    let row = *rows.entry((deg, k)).or_insert(next);
                    col.push((row, v));
                }
            }
        }
        columns.push(col);
    }
    let mut m = RatMatrix::zeros(rows.len().max(1), basis.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (i, v) in col {
            m.set(i, j, v);
        }
    }
    kernel_dim(&m)
}
