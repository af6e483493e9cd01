//! Numerical rigidity index of Coxeter connections and the classification it reproduces.

use rayon::prelude::*;
use serde::Serialize;

use crate::chevalley::{structure_constants, StructureConstants};
use crate::coxeter::CoxeterParams;
use crate::error::{Error, Result, Triple};
use crate::orbits::{centralizer_dim, Method, Oracle};
use crate::rootsys::{Family, RootSystem, SimpleType};

/// One row of the classification table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidityVerdict {
    pub family: Family,
    pub rank: usize,
    pub r: u32,
    pub m: u32,
    pub irr0: u64,
    #[serde(rename = "dimI0")]
    pub dim_g_i0: u64,
    #[serde(rename = "dimIinf")]
    pub dim_g_iinf: u64,
    #[serde(rename = "dimI")]
    pub dim_g_i: u64,
    #[serde(rename = "n")]
    pub n_value: i64,
    pub rigid: bool,
    pub method: Method,
}

impl RigidityVerdict {
    pub fn triple(&self) -> Triple {
        Triple {
            family: self.family,
            rank: self.rank,
            r: self.r,
            m: self.m,
        }
    }
}

/// `n = Irr_0(ad) - dim g^{I_0} - dim g^{I_inf} + 2 dim g^I` for the Coxeter connection.
///
/// `Irr_0 = (r + m h) l`; `g^{I_0}` and `g^I` vanish; at infinity the connection is
/// regular singular with monodromy `exp(N_r)` when `m = 0` and regular otherwise.
pub fn numerical_index(
    sc: &StructureConstants,
    params: &CoxeterParams,
    oracle: Oracle,
) -> Result<RigidityVerdict> {
    let ty = sc.rs.ty;
    let l = ty.rank as u64;
    let (h, r, m) = (params.h as u64, params.r as u64, params.m as u64);
    let irr0 = (r + m * h) * l;
    let (dim_g_iinf, method) = if m == 0 {
        let (c, method) = centralizer_dim(sc, params.r, oracle)?;
        (c as u64, method)
    } else {
        let method = match oracle {
            Oracle::Partition if ty.family.is_classical() => Method::Partition,
            _ => Method::Bruteforce,
        };
        (sc.dim() as u64, method)
    };
    let (dim_g_i0, dim_g_i) = (0, 0);
    let n_value = irr0 as i64 - dim_g_i0 as i64 - dim_g_iinf as i64 + 2 * dim_g_i as i64;
    Ok(RigidityVerdict {
        family: ty.family,
        rank: ty.rank,
        r: params.r,
        m: params.m,
        irr0,
        dim_g_i0,
        dim_g_iinf,
        dim_g_i,
        n_value,
        rigid: n_value == 0,
        method,
    })
}

/// Builds the structure constants and evaluates a single triple.
pub fn numerical_index_for(ty: SimpleType, r: i64, m: i64, oracle: Oracle) -> Result<RigidityVerdict> {
    let rs = RootSystem::new(ty)?;
    let params = CoxeterParams::new(&rs, r, m)?;
    numerical_index(&structure_constants(&rs), &params, oracle)
}

fn divides(r: u32, n: i64) -> bool {
    n != 0 && n % r as i64 == 0
}

/// The list of rigid Coxeter connections, as a closed-form predicate.
pub fn theorem_predicate(params: &CoxeterParams) -> bool {
    let (r, m) = (params.r, params.m);
    if r == 1 && m <= 1 {
        return true;
    }
    if m != 0 {
        return false;
    }
    let n = params.ty.rank as i64;
    match params.ty.family {
        // sl_n with n = l + 1
        Family::A => divides(r, n + 2) || divides(r, n),
        Family::B => divides(r, n + 1) || divides(r, 2 * n + 1),
        Family::C => divides(r, 2 * n + 1) || divides(r, 2 * n - 1),
        Family::D => divides(r, 2 * n) || divides(r, 2 * n - 1),
        Family::E => n == 7 && r == 7,
        Family::F | Family::G => false,
    }
}

/// Every legal `(type, r, m)` with rank at most `rank_max` and `m <= m_max`.
pub fn legal_triples(families: &[Family], rank_max: usize, m_max: u32) -> Vec<(SimpleType, u32, u32)> {
    let mut out = Vec::new();
    for &f in families {
        for l in f.ranks_up_to(rank_max) {
            let ty = SimpleType { family: f, rank: l };
            for r in CoxeterParams::legal_r(ty.coxeter_number_table()) {
                for m in 0..=m_max {
                    out.push((ty, r, m));
                }
            }
        }
    }
    out
}

/// One verdict per legal triple, in family, rank, `r`, `m` order.
///
/// `oracle = None` picks partition formulas for classical families and brute force otherwise.
pub fn classify_range(
    families: &[Family],
    rank_max: usize,
    m_max: u32,
    oracle: Option<Oracle>,
) -> Result<Vec<RigidityVerdict>> {
    let mut types = Vec::new();
    for &f in families {
        for l in f.ranks_up_to(rank_max) {
            types.push(SimpleType { family: f, rank: l });
        }
    }
    let per_type: Vec<Result<Vec<RigidityVerdict>>> = types
        .par_iter()
        .map(|&ty| {
            let rs = RootSystem::new(ty)?;
            let sc = structure_constants(&rs);
            let oracle = oracle.unwrap_or_else(|| Oracle::default_for(ty.family));
            let rs_ref = &sc.rs;
            CoxeterParams::legal_r(rs_ref.h())
                .into_par_iter()
                .flat_map_iter(|r| (0..=m_max).map(move |m| (r, m)))
                .map(|(r, m)| {
                    let p = CoxeterParams::new(rs_ref, r as i64, m as i64)?;
                    numerical_index(&sc, &p, oracle)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for v in per_type {
        out.extend(v?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossCheckReport {
    pub checked: usize,
    pub rigid: usize,
    pub mismatches: Vec<Triple>,
}

/// Compares every verdict in range against [`theorem_predicate`].
pub fn cross_check(
    families: &[Family],
    rank_max: usize,
    m_max: u32,
    oracle: Option<Oracle>,
) -> Result<CrossCheckReport> {
    let verdicts = classify_range(families, rank_max, m_max, oracle)?;
    let report = compare(&verdicts);
    if report.mismatches.is_empty() {
        Ok(report)
    } else {
        Err(Error::MismatchFound(report.mismatches))
    }
}

/// Mismatch report for precomputed verdicts.
pub fn compare(verdicts: &[RigidityVerdict]) -> CrossCheckReport {
    let mismatches = verdicts
        .iter()
        .filter(|v| {
            let p = CoxeterParams {
                ty: SimpleType {
                    family: v.family,
                    rank: v.rank,
                },
                h: SimpleType {
                    family: v.family,
                    rank: v.rank,
                }
                .coxeter_number_table(),
                r: v.r,
                m: v.m,
            };
            v.rigid != theorem_predicate(&p)
        })
        .map(RigidityVerdict::triple)
        .collect();
    CrossCheckReport {
        checked: verdicts.len(),
        rigid: verdicts.iter().filter(|v| v.rigid).count(),
        mismatches,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::orbit_dim;

    fn ty(f: Family, l: usize) -> SimpleType {
        SimpleType::new(f, l).unwrap()
    }

    fn params(f: Family, l: usize, r: u32, m: u32) -> CoxeterParams {
        let t = ty(f, l);
        CoxeterParams {
            ty: t,
            h: t.coxeter_number_table(),
            r,
            m,
        }
    }

    #[test]
    fn verdict_examples() {
        let v = numerical_index_for(ty(Family::E, 7), 7, 0, Oracle::Brute).unwrap();
        assert!(v.rigid);
        assert_eq!((v.irr0, v.dim_g_iinf, v.n_value), (49, 49, 0));

        let v = numerical_index_for(ty(Family::G, 2), 5, 0, Oracle::Brute).unwrap();
        assert!(!v.rigid);

        let v = numerical_index_for(ty(Family::A, 4), 2, 0, Oracle::Both).unwrap();
        assert_eq!((v.irr0, v.dim_g_iinf, v.n_value, v.rigid), (8, 8, 0, true));

        for t in SimpleType::all_up_to(8) {
            let (h, l) = (t.coxeter_number_table() as i64, t.rank as i64);
            let v = numerical_index_for(t, 1, 1, Oracle::Brute).unwrap();
            assert_eq!(v.n_value, 0, "{t}");
            let v = numerical_index_for(t, 1, 2, Oracle::Brute).unwrap();
            assert_eq!(v.n_value, h * l, "{t}");
            assert!(!v.rigid);
        }
    }

    #[test]
    fn illegal_parameters() {
        assert!(matches!(
            numerical_index_for(ty(Family::G, 2), 4, 0, Oracle::Brute),
            Err(Error::BadSlopeNumerator { r: 4, h: 6 })
        ));
        assert!(matches!(numerical_index_for(ty(Family::G, 2), 1, -1, Oracle::Brute), Err(Error::BadM(-1))));
    }

    #[test]
    fn predicate_examples() {
        assert!(theorem_predicate(&params(Family::B, 2, 3, 0)));
        assert!(!theorem_predicate(&params(Family::F, 4, 5, 0)));
        assert!(theorem_predicate(&params(Family::E, 7, 7, 0)));
        assert!(!theorem_predicate(&params(Family::E, 7, 7, 1)));
        assert!(!theorem_predicate(&params(Family::D, 4, 5, 0)));
        assert!(theorem_predicate(&params(Family::D, 5, 5, 0)));
        assert!(!theorem_predicate(&params(Family::A, 4, 1, 2)));
    }

    #[test]
    fn classify_small_ranges() {
        let v = classify_range(&[Family::A], 2, 1, None).unwrap();
        let rows: Vec<(usize, u32, u32, bool)> = v.iter().map(|v| (v.rank, v.r, v.m, v.rigid)).collect();
        assert_eq!(
            rows,
            vec![
                (1, 1, 0, true),
                (1, 1, 1, true),
                (2, 1, 0, true),
                (2, 1, 1, true),
                (2, 2, 0, true),
                (2, 2, 1, false),
            ]
        );
        let g = classify_range(&[Family::G], 2, 0, None).unwrap();
        assert_eq!(g.iter().map(|v| (v.r, v.rigid)).collect::<Vec<_>>(), vec![(1, true), (5, false)]);
        assert!(classify_range(&[], 8, 2, None).unwrap().is_empty());
    }

    #[test]
    fn sweep_invariants_and_agreement() {
        let all = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];
        let verdicts = classify_range(&all, 6, 2, Some(Oracle::Both)).unwrap();
        assert_eq!(verdicts.len(), legal_triples(&all, 6, 2).len());
        for v in &verdicts {
            let t = ty(v.family, v.rank);
            let (h, l) = (t.coxeter_number_table() as i64, t.rank as i64);
            assert_eq!(v.n_value, v.irr0 as i64 - v.dim_g_i0 as i64 - v.dim_g_iinf as i64 + 2 * v.dim_g_i as i64);
            assert!(v.n_value >= 0, "{:?}", v);
            assert_eq!(v.rigid, v.n_value == 0);
            if v.rigid {
                assert!(v.m <= 1);
            }
            if v.r == 1 && v.m == 0 {
                assert!(v.rigid);
            }
            if v.m == 0 {
                let sc = structure_constants(&RootSystem::new(t).unwrap());
                let dim_o = orbit_dim(&sc, v.r, Oracle::Brute).unwrap() as i64;
                assert_eq!(v.n_value, dim_o - (h + 1 - v.r as i64) * l);
            }
        }
        let report = compare(&verdicts);
        assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
    }

    #[test]
    fn single_triple_cross_check() {
        let r = cross_check(&[Family::E], 7, 0, None);
        assert!(r.is_ok());
    }

    #[test]
    fn json_row_shape() {
        let v = numerical_index_for(ty(Family::C, 3), 5, 0, Oracle::Partition).unwrap();
        let j = serde_json::to_value(&v).unwrap();
        let keys: Vec<&str> = j.as_object().unwrap().keys().map(String::as_str).collect();
        for k in ["family", "rank", "r", "m", "irr0", "dimI0", "dimIinf", "dimI", "n", "rigid", "method"] {
            assert!(keys.contains(&k), "missing {k}");
        }
        assert_eq!(j["family"], "C");
        assert_eq!(j["method"], "partition");
    }
}
