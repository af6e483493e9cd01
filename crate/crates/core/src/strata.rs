//! Moy-Prasad gradings at rational apartment points, leading strata, and the
//! Newton polygon of the adjoint characteristic polynomial.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chevalley::{GElement, StructureConstants};
use crate::coxeter::LoopElement;
use crate::error::{Error, Result};
use crate::linalg::{self, rat, Rational};
use crate::rootsys::RootSystem;

/// A point `x` of the apartment, recorded by the values `alpha_j(x)` on the simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApartmentPoint {
    pub values: Vec<Rational>,
}

impl ApartmentPoint {
    pub fn origin(rank: usize) -> Self {
        ApartmentPoint {
            values: vec![Rational::zero(); rank],
        }
    }

    /// The barycenter of the fundamental alcove: `alpha(x) = ht(alpha) / h`.
    pub fn barycenter(rs: &RootSystem) -> Self {
        ApartmentPoint {
            values: vec![Rational::new(BigInt::one(), BigInt::from(rs.h())); rs.rank()],
        }
    }

    /// `alpha(x)` for a root given by its coefficients over the simple roots.
    pub fn pair(&self, coeffs: &[i32]) -> Rational {
        coeffs
            .iter()
            .zip(&self.values)
            .filter(|(c, _)| **c != 0)
            .map(|(c, v)| v * rat(*c as i64))
            .sum()
    }

    /// Parses a JSON array of rationals, written as strings (`"1/3"`) or integers.
    pub fn from_json(text: &str, rank: usize) -> Result<Self> {
        let raw: Vec<serde_json::Value> = serde_json::from_str(text)?;
        if raw.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: raw.len(),
            });
        }
        let values = raw.iter().map(parse_rational_value).collect::<Result<_>>()?;
        Ok(ApartmentPoint { values })
    }
}

impl Serialize for ApartmentPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.values.iter().map(Rational::to_string).collect();
        v.serialize(s)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let q = Rational::from_str(s.trim()).map_err(|_| Error::InvalidRational(s.to_string()))?;
    Ok(q)
}

fn parse_rational_value(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(rat)
            .ok_or_else(|| Error::InvalidRational(n.to_string())),
        other => Err(Error::InvalidRational(other.to_string())),
    }
}

/// A single basis line of `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLine {
    Cartan(usize),
    Root(usize),
}

/// Degree of `b t^power` at `x`: `alpha(x) + power` on a root line, `power` on the Cartan.
pub fn mp_degree(rs: &RootSystem, line: BasisLine, power: i64, x: &ApartmentPoint) -> Rational {
    match line {
        BasisLine::Cartan(_) => rat(power),
        BasisLine::Root(a) => x.pair(&rs.roots[a].coeffs) + rat(power),
    }
}

fn support(z: &LoopElement) -> impl Iterator<Item = (i64, BasisLine, &Rational)> {
    z.terms.iter().flat_map(|(&d, g)| {
        let cartan = g
            .cartan
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(i, v)| (d, BasisLine::Cartan(i), v));
        let roots = g.roots.iter().map(move |(&a, v)| (d, BasisLine::Root(a), v));
        cartan.chain(roots)
    })
}

/// Depth, homogeneous leading term and fundamentality of a connection matrix at `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub point: ApartmentPoint,
    pub depth: Rational,
    pub leading: LoopElement,
    pub fundamental: bool,
    /// No term of negative degree at this point.
    pub regular_singular: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct StratumJson {
    pub point: ApartmentPoint,
    pub depth: String,
    pub leading: Vec<TermSpec>,
    pub fundamental: bool,
    pub regular_singular: bool,
}

impl Stratum {
    pub fn describe(&self, rs: &RootSystem) -> StratumJson {
        StratumJson {
            point: self.point.clone(),
            depth: self.depth.to_string(),
            leading: terms_json(rs, &self.leading),
            fundamental: self.fundamental,
            regular_singular: self.regular_singular,
        }
    }
}

pub fn leading_stratum(sc: &StructureConstants, a: &LoopElement, x: &ApartmentPoint) -> Stratum {
    let rs = &sc.rs;
    let l = rs.rank();
    let degrees: Vec<(i64, BasisLine, &Rational, Rational)> = support(a)
        .map(|(d, line, v)| (d, line, v, mp_degree(rs, line, d, x)))
        .collect();
    let min = degrees.iter().map(|t| &t.3).min().cloned();
    let min = match min {
        Some(m) if !m.is_positive() => m,
        _ => {
            return Stratum {
                point: x.clone(),
                depth: Rational::zero(),
                leading: LoopElement::new(),
                fundamental: false,
                regular_singular: true,
            }
        }
    };
    let mut leading = LoopElement::new();
    for (d, line, v, deg) in &degrees {
        if *deg != min {
            continue;
        }
        let mut g = GElement::zero(l);
        match line {
            BasisLine::Cartan(i) => g.cartan[*i] = (*v).clone(),
            BasisLine::Root(r) => g.add_root(*r, v),
        }
        leading.add_term(*d, &g);
    }
    let fundamental = !is_nilpotent_loop(sc, &leading);
    Stratum {
        point: x.clone(),
        depth: -min.clone(),
        leading,
        fundamental,
        regular_singular: min.is_zero(),
    }
}

/// `t^-dmin Z` as a polynomial in `t`, with its degree.
fn to_polynomial(z: &LoopElement) -> (LoopElement, i64, usize) {
    let dmin = z.min_degree().unwrap_or(0);
    let dmax = z.max_degree().unwrap_or(0);
    (z.shift(-dmin), dmin, (dmax - dmin) as usize)
}

/// Whether `ad Z(t)` is nilpotent over the Laurent polynomials.
///
/// Every coefficient of the characteristic polynomial of `ad (t^-dmin Z)` is a
/// polynomial in `t` of degree at most `dim g * spread`, so vanishing at that
/// many plus one points decides it.
pub fn is_nilpotent_loop(sc: &StructureConstants, z: &LoopElement) -> bool {
    if z.is_zero() {
        return true;
    }
    let (p, _, spread) = to_polynomial(z);
    let bound = sc.dim() * spread;
    let l = sc.rank();
    (1..=bound as i64 + 1)
        .into_par_iter()
        .all(|t0| linalg::is_nilpotent(&sc.ad(&p.specialize(l, &rat(t0)))))
}

/// Eigenvalue slopes of `ad A` read off the Newton polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// `(slope, multiplicity)` in increasing slope order; zero eigenvalues count as slope 0.
    pub slopes: Vec<(Rational, usize)>,
}

impl NewtonPolygon {
    pub fn dimension(&self) -> usize {
        self.slopes.iter().map(|s| s.1).sum()
    }

    /// Sum of the positive slopes with multiplicity.
    pub fn irregularity(&self) -> Rational {
        self.slopes
            .iter()
            .filter(|(s, _)| s.is_positive())
            .map(|(s, k)| s * rat(*k as i64))
            .sum()
    }
}

impl Serialize for NewtonPolygon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Slope {
            slope: String,
            multiplicity: usize,
        }
        let v: Vec<Slope> = self
            .slopes
            .iter()
            .map(|(q, k)| Slope {
                slope: q.to_string(),
                multiplicity: *k,
            })
            .collect();
        v.serialize(s)
    }
}

fn valuation(poly: &[Rational]) -> Option<i64> {
    poly.iter().position(|c| !c.is_zero()).map(|i| i as i64)
}

/// t-adic valuations of the coefficients `c_k(t)` of `det(lambda - ad A(t))`, `k = 0..n`.
fn coefficient_valuations(sc: &StructureConstants, a: &LoopElement) -> Vec<Option<i64>> {
    let n = sc.dim();
    let (p, dmin, spread) = to_polynomial(a);
    let points = n * spread + 1;
    let l = sc.rank();
    let xs: Vec<Rational> = (1..=points as i64).map(rat).collect();
    let polys: Vec<Vec<Rational>> = xs
        .par_iter()
        .map(|t0| linalg::charpoly(&sc.ad(&p.specialize(l, t0))))
        .collect();
    (0..=n)
        .map(|k| {
            if k == n {
                return Some(0);
            }
            let deg = (n - k) * spread;
            let ys: Vec<Rational> = polys.iter().take(deg + 1).map(|c| c[k].clone()).collect();
            let coeffs = linalg::interpolate(&xs[..deg + 1], &ys);
            valuation(&coeffs).map(|v| v + (n - k) as i64 * dmin)
        })
        .collect()
}

/// Lower convex hull of the points `(k, v_k)`.
pub fn newton_polygon(sc: &StructureConstants, a: &LoopElement) -> NewtonPolygon {
    let vals = coefficient_valuations(sc, a);
    let pts: Vec<(i64, i64)> = vals
        .iter()
        .enumerate()
        .filter_map(|(k, v)| v.map(|v| (k as i64, v)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut slopes: Vec<(Rational, usize)> = Vec::new();
    // c_0 .. c_{j-1} vanishing means j zero eigenvalues
    let zeros = pts.first().map(|p| p.0 as usize).unwrap_or(0);
    if zeros > 0 {
        slopes.push((Rational::zero(), zeros));
    }
    for w in hull.windows(2) {
        let len = (w[1].0 - w[0].0) as usize;
        let s = Rational::new(BigInt::from(w[1].1 - w[0].1), BigInt::from(w[1].0 - w[0].0));
        match slopes.iter_mut().find(|(q, _)| *q == s) {
            Some(e) => e.1 += len,
            None => slopes.push((s, len)),
        }
    }
    slopes.sort();
    NewtonPolygon { slopes }
}

/// Irregularity of the adjoint system at `0`: the sum of positive eigenvalue slopes.
pub fn newton_irregularity(sc: &StructureConstants, a: &LoopElement) -> Rational {
    if a.is_zero() {
        return Rational::zero();
    }
    newton_polygon(sc, a).irregularity()
}

/// One term `value * b t^degree` of a connection matrix, in the JSON exchange format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub degree: i64,
    pub basis: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_coeffs: Option<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan_index: Option<usize>,
    pub value: serde_json::Value,
}

/// Parses a JSON list of terms into a loop element.
pub fn parse_terms(rs: &RootSystem, text: &str) -> Result<LoopElement> {
    let specs: Vec<TermSpec> = serde_json::from_str(text)?;
    let l = rs.rank();
    let mut out = LoopElement::new();
    for t in specs {
        let value = parse_rational_value(&t.value)?;
        let mut g = GElement::zero(l);
        match t.basis.as_str() {
            "root" => {
                let c = t
                    .root_coeffs
                    .ok_or_else(|| Error::Input("root term without root_coeffs".into()))?;
                if c.len() != l {
                    return Err(Error::DimensionMismatch {
                        expected: l,
                        found: c.len(),
                    });
                }
                let idx = rs.index_of(&c).ok_or(Error::UnknownRoot(c))?;
                g.add_root(idx, &value);
            }
            "cartan" => {
                let i = t
                    .cartan_index
                    .ok_or_else(|| Error::Input("cartan term without cartan_index".into()))?;
                if i >= l {
                    return Err(Error::CartanIndexOutOfRange { index: i, rank: l });
                }
                g.cartan[i] = value;
            }
            other => return Err(Error::Input(format!("unknown basis kind `{other}`"))),
        }
        out.add_term(t.degree, &g);
    }
    Ok(out)
}

/// Inverse of [`parse_terms`]; values are written as rational strings.
pub fn terms_json(rs: &RootSystem, z: &LoopElement) -> Vec<TermSpec> {
    support(z)
        .map(|(d, line, v)| match line {
            BasisLine::Cartan(i) => TermSpec {
                degree: d,
                basis: "cartan".into(),
                root_coeffs: None,
                cartan_index: Some(i),
                value: serde_json::Value::String(v.to_string()),
            },
            BasisLine::Root(a) => TermSpec {
                degree: d,
                basis: "root".into(),
                root_coeffs: Some(rs.roots[a].coeffs.clone()),
                cartan_index: None,
                value: serde_json::Value::String(v.to_string()),
            },
        })
        .collect()
}
