//! Nilpotent orbit of `N_r`: Jordan types, centralizer and orbit dimensions.
//!
//! Two independent oracles: an exact kernel of `ad N_r` (any type) and partition
//! combinatorics of the Jordan type in the standard representation (classical types).

use serde::{Serialize, Serializer};

use crate::chevalley::StructureConstants;
use crate::coxeter::{build_nr, CoxeterParams};
use crate::error::{Error, Result, Triple};
use crate::linalg::kernel_dim;
use crate::rootsys::{Family, RootSystem, SimpleType};

/// A weakly decreasing list of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts and drops zero parts.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    fn multiplicity(&self, k: u32) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }

    /// Parity rule for nilpotent orbits in the standard representation:
    /// `so` needs even parts with even multiplicity, `sp` odd parts with even multiplicity.
    pub fn satisfies_parity(&self, family: Family) -> bool {
        let bad_parity = match family {
            Family::B | Family::D => 0,
            Family::C => 1,
            _ => return family == Family::A,
        };
        self.parts
            .iter()
            .filter(|&&p| p % 2 == bad_parity)
            .all(|&p| self.multiplicity(p).is_multiple_of(2))
    }

    /// All parts even, each with even multiplicity; such a type-D class splits into two orbits.
    pub fn is_very_even(&self) -> bool {
        !self.parts.is_empty()
            && self.parts.iter().all(|&p| p % 2 == 0 && self.multiplicity(p).is_multiple_of(2))
    }

    pub fn sum_of_squares(&self) -> u64 {
        self.parts.iter().map(|&p| (p as u64) * (p as u64)).sum()
    }

    pub fn odd_parts(&self) -> u64 {
        self.parts.iter().filter(|&&p| p % 2 == 1).count() as u64
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

/// Transpose of the Young diagram.
pub fn dual_partition(p: &Partition) -> Partition {
    let first = p.parts.first().copied().unwrap_or(0);
    Partition::new(
        (1..=first)
            .map(|j| p.parts.iter().filter(|&&x| x >= j).count() as u32)
            .collect(),
    )
}

/// Which centralizer computation to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Oracle {
    Brute,
    Partition,
    Both,
}

impl Oracle {
    /// Partition formulas for classical families, brute force otherwise.
    pub fn default_for(family: Family) -> Oracle {
        if family.is_classical() {
            Oracle::Partition
        } else {
            Oracle::Brute
        }
    }
}

impl std::str::FromStr for Oracle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "brute" | "bruteforce" => Ok(Oracle::Brute),
            "partition" => Ok(Oracle::Partition),
            "both" => Ok(Oracle::Both),
            _ => Err(Error::Input(format!("unknown oracle `{s}`"))),
        }
    }
}

/// Which oracle actually produced a number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bruteforce,
    Partition,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Bruteforce => "bruteforce",
            Method::Partition => "partition",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotentData {
    pub family: Family,
    pub rank: usize,
    pub r: u32,
    pub jordan: Option<Partition>,
    pub dual: Option<Partition>,
    #[serde(rename = "dimC")]
    pub dim_centralizer: usize,
    #[serde(rename = "dimO")]
    pub dim_orbit: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub very_even: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<String>,
    pub method: Method,
}

fn legal(family: Family, rank: usize, r: u32) -> Result<SimpleType> {
    let ty = SimpleType::new(family, rank)?;
    let h = ty.coxeter_number_table();
    if !CoxeterParams::legal_r(h).contains(&r) {
        return Err(Error::BadSlopeNumerator { r: r as i64, h });
    }
    Ok(ty)
}

/// Size `N` of the standard representation together with the `+1` shift used for type D.
fn decomposition(family: Family, rank: usize) -> Result<(u32, u32)> {
    let l = rank as u32;
    match family {
        Family::A => Ok((l + 1, 0)),
        Family::B => Ok((2 * l + 1, 0)),
        Family::C => Ok((2 * l, 0)),
        Family::D => Ok((2 * l, 1)),
        f => Err(Error::NotClassical(f)),
    }
}

/// `(k, n')` with `N - shift = k r + n'`, `0 <= n' < r`.
fn euclid(family: Family, rank: usize, r: u32) -> Result<(u32, u32)> {
    let (size, shift) = decomposition(family, rank)?;
    let n = size - shift;
    Ok((n / r, n % r))
}

/// Jordan type of `N_r` in the standard representation.
pub fn jordan_type_of_nr(family: Family, rank: usize, r: u32) -> Result<Partition> {
    if !family.is_classical() {
        return Err(Error::NotClassical(family));
    }
    legal(family, rank, r)?;
    jordan_recipe(family, rank, r)
}

/// The `(k, n')` recipe without the coprimality check on `r`.
fn jordan_recipe(family: Family, rank: usize, r: u32) -> Result<Partition> {
    let (k, np) = euclid(family, rank, r)?;
    let mut parts = vec![k + 1; np as usize];
    parts.extend(std::iter::repeat_n(k, (r - np) as usize));
    if family == Family::D {
        parts.push(1);
    }
    Ok(Partition::new(parts))
}

/// Closed-form centralizer dimension in terms of `k` and `n'`.
pub fn centralizer_dim_partition(family: Family, rank: usize, r: u32) -> Result<usize> {
    if !family.is_classical() {
        return Err(Error::NotClassical(family));
    }
    legal(family, rank, r)?;
    let (k, np) = euclid(family, rank, r)?;
    let (k, np, r) = (k as i64, np as i64, r as i64);
    let even = k % 2 == 0;
    let twice = match family {
        Family::A => return Ok((k * r * r + np * np - 1) as usize),
        Family::B => k * r * r + np * np - if even { np } else { r - np },
        Family::C => k * r * r + np * np + if even { np } else { r - np },
        Family::D => {
            (r + 1) * (r + 1) + (k - 1) * r * r + np * np - if even { np + 1 } else { r - np + 1 }
        }
        _ => unreachable!(),
    };
    debug_assert!(twice % 2 == 0);
    Ok((twice / 2) as usize)
}

/// Centralizer dimension of a nilpotent with Jordan type `p` in `sl`, `so` or `sp`.
pub fn standard_centralizer_dim(family: Family, p: &Partition) -> Result<usize> {
    let s = dual_partition(p).sum_of_squares();
    let odd = p.odd_parts();
    match family {
        Family::A => Ok((s - 1) as usize),
        Family::B | Family::D => Ok(((s - odd) / 2) as usize),
        Family::C => Ok(((s + odd) / 2) as usize),
        f => Err(Error::NotClassical(f)),
    }
}

/// `dim ker ad N_r`, exact.
pub fn centralizer_dim_bruteforce(sc: &StructureConstants, r: u32) -> Result<usize> {
    let nr = build_nr(&sc.rs, r as i64)?;
    Ok(kernel_dim(&sc.ad(&nr)))
}

/// Centralizer dimension of `N_r` via `oracle`.
///
/// `Both` compares the two computations on classical types and falls back to
/// brute force on exceptional types.
pub fn centralizer_dim(sc: &StructureConstants, r: u32, oracle: Oracle) -> Result<(usize, Method)> {
    let ty = sc.rs.ty;
    let classical = ty.family.is_classical();
    match oracle {
        Oracle::Partition => Ok((centralizer_dim_partition(ty.family, ty.rank, r)?, Method::Partition)),
        Oracle::Brute => Ok((centralizer_dim_bruteforce(sc, r)?, Method::Bruteforce)),
        Oracle::Both if !classical => Ok((centralizer_dim_bruteforce(sc, r)?, Method::Bruteforce)),
        Oracle::Both => {
            let p = centralizer_dim_partition(ty.family, ty.rank, r)?;
            let b = centralizer_dim_bruteforce(sc, r)?;
            if p != b {
                return Err(Error::OracleMismatch {
                    triple: Triple {
                        family: ty.family,
                        rank: ty.rank,
                        r,
                        m: 0,
                    },
                    partition: p,
                    bruteforce: b,
                });
            }
            Ok((b, Method::Bruteforce))
        }
    }
}

pub fn orbit_dim(sc: &StructureConstants, r: u32, oracle: Oracle) -> Result<usize> {
    Ok(sc.dim() - centralizer_dim(sc, r, oracle)?.0)
}

/// Orbit names for the exceptional cases whose classes are identified in the literature.
pub fn known_label(ty: SimpleType, r: u32) -> Option<&'static str> {
    match (ty.family, ty.rank, r) {
        (Family::E, 6, 5) => Some("2A_1+A_2"),
        (Family::E, 7, 5) => Some("A_3+A_2+A_1"),
        (Family::E, 7, 7) => Some("A_2+3A_1"),
        _ => None,
    }
}

pub fn nilpotent_data(sc: &StructureConstants, r: u32, oracle: Oracle) -> Result<NilpotentData> {
    let ty = sc.rs.ty;
    legal(ty.family, ty.rank, r)?;
    let (dim_c, method) = centralizer_dim(sc, r, oracle)?;
    let (jordan, dual, very_even) = if ty.family.is_classical() {
        let j = jordan_type_of_nr(ty.family, ty.rank, r)?;
        let d = dual_partition(&j);
        let ve = (ty.family == Family::D).then(|| j.is_very_even());
        (Some(j), Some(d), ve)
    } else {
        (None, None, None)
    };
    Ok(NilpotentData {
        family: ty.family,
        rank: ty.rank,
        r,
        jordan,
        dual,
        dim_centralizer: dim_c,
        dim_orbit: sc.dim() - dim_c,
        very_even,
        labels: known_label(ty, r).map(str::to_string),
        method,
    })
}

/// Convenience wrapper building the structure constants on the fly.
pub fn nilpotent_data_for(ty: SimpleType, r: u32, oracle: Oracle) -> Result<NilpotentData> {
    let sc = crate::chevalley::structure_constants(&RootSystem::new(ty)?);
    nilpotent_data(&sc, r, oracle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::structure_constants;
    use proptest::prelude::*;

    fn sc(f: Family, l: usize) -> StructureConstants {
        structure_constants(&RootSystem::new(SimpleType::new(f, l).unwrap()).unwrap())
    }

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn jordan_examples() {
        assert_eq!(jordan_type_of_nr(Family::A, 4, 2).unwrap(), p(&[3, 2]));
        assert_eq!(jordan_type_of_nr(Family::C, 2, 3).unwrap(), p(&[2, 1, 1]));
        // r = 3 is not coprime to h = 6 in D4; the recipe still makes sense
        assert_eq!(jordan_recipe(Family::D, 4, 3).unwrap(), p(&[3, 2, 2, 1]));
        assert!(matches!(jordan_type_of_nr(Family::D, 4, 3), Err(Error::BadSlopeNumerator { r: 3, h: 6 })));
        assert_eq!(jordan_type_of_nr(Family::D, 4, 5).unwrap(), p(&[2, 2, 1, 1, 1, 1]));
        assert!(matches!(jordan_type_of_nr(Family::E, 7, 7), Err(Error::NotClassical(Family::E))));
        assert!(matches!(jordan_type_of_nr(Family::A, 4, 5), Err(Error::BadSlopeNumerator { .. })));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_partition(&p(&[3, 2])), p(&[2, 2, 1]));
        assert_eq!(dual_partition(&p(&[1, 1, 1])), p(&[3]));
        let j = jordan_type_of_nr(Family::A, 4, 2).unwrap();
        assert_eq!(dual_partition(&j), p(&[2, 2, 1]));
    }

    #[test]
    fn partition_formula_examples() {
        assert_eq!(centralizer_dim_partition(Family::A, 4, 2).unwrap(), 8);
        assert_eq!(centralizer_dim_partition(Family::B, 2, 3).unwrap(), 6);
        assert_eq!(centralizer_dim_partition(Family::C, 2, 3).unwrap(), 6);
        assert!(matches!(centralizer_dim_partition(Family::G, 2, 1), Err(Error::NotClassical(_))));
    }

    #[test]
    fn exceptional_orbits() {
        let e7 = sc(Family::E, 7);
        assert_eq!(centralizer_dim_bruteforce(&e7, 7).unwrap(), 49);
        assert_eq!(centralizer_dim_bruteforce(&e7, 5).unwrap(), 33);
        assert_eq!(orbit_dim(&e7, 7, Oracle::Both).unwrap(), 84);
        let e6 = sc(Family::E, 6);
        assert_eq!(centralizer_dim_bruteforce(&e6, 5).unwrap(), 28);
        let e8 = sc(Family::E, 8);
        assert_eq!(centralizer_dim_bruteforce(&e8, 17).unwrap(), 120);
        assert_eq!(orbit_dim(&e8, 7, Oracle::Brute).unwrap(), 196);
        assert_eq!(orbit_dim(&e8, 1, Oracle::Brute).unwrap(), 240);
    }

    #[test]
    fn classical_oracles_agree() {
        for f in [Family::A, Family::B, Family::C, Family::D] {
            for l in f.ranks_up_to(7) {
                let s = sc(f, l);
                for r in CoxeterParams::legal_r(s.rs.h()) {
                    let part = centralizer_dim_partition(f, l, r).unwrap();
                    assert_eq!(part, centralizer_dim_bruteforce(&s, r).unwrap(), "{f}{l} r={r}");
                    let j = jordan_type_of_nr(f, l, r).unwrap();
                    assert_eq!(part, standard_centralizer_dim(f, &j).unwrap(), "{f}{l} r={r}");
                    assert!(j.satisfies_parity(f), "{f}{l} r={r} {j}");
                    let data = nilpotent_data(&s, r, Oracle::Both).unwrap();
                    assert_eq!(data.dim_orbit + data.dim_centralizer, s.dim());
                    assert_eq!(data.dim_orbit % 2, 0);
                }
            }
        }
    }

    #[test]
    fn principal_orbit_everywhere() {
        for ty in SimpleType::all_up_to(8) {
            let s = structure_constants(&RootSystem::new(ty).unwrap());
            assert_eq!(orbit_dim(&s, 1, Oracle::Brute).unwrap(), s.rs.roots.len(), "{ty}");
        }
    }

    #[test]
    fn parity_and_very_even() {
        assert!(p(&[2, 2]).is_very_even());
        assert!(p(&[2, 2]).satisfies_parity(Family::D));
        assert!(!p(&[2, 1]).satisfies_parity(Family::B));
        assert!(p(&[2, 1, 1]).satisfies_parity(Family::C));
        assert!(!p(&[3, 1]).satisfies_parity(Family::C));
        assert!(!p(&[3, 1]).is_very_even());
    }

    #[test]
    fn json_shape() {
        let d = nilpotent_data(&sc(Family::A, 4), 2, Oracle::Partition).unwrap();
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["jordan"], serde_json::json!([3, 2]));
        assert_eq!(v["dual"], serde_json::json!([2, 2, 1]));
        assert_eq!(v["dimC"], 8);
        assert_eq!(v["dimO"], 16);
        assert_eq!(v["method"], "partition");
        let e = nilpotent_data(&sc(Family::E, 7), 7, Oracle::Brute).unwrap();
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v["labels"], "A_2+3A_1");
        assert!(v["jordan"].is_null());
    }

    fn partition_strategy() -> impl Strategy<Value = Partition> {
        proptest::collection::vec(1u32..9, 0..9).prop_map(Partition::new)
    }

    proptest! {
        #[test]
        fn dual_is_involution(p in partition_strategy()) {
            let d = dual_partition(&p);
            prop_assert_eq!(d.total(), p.total());
            prop_assert_eq!(dual_partition(&d), p);
        }

        #[test]
        fn parity_is_stable_under_doubling(p in partition_strategy()) {
            let mut doubled = p.parts().to_vec();
            doubled.extend_from_slice(p.parts());
            let q = Partition::new(doubled);
            prop_assert!(q.satisfies_parity(Family::B));
            prop_assert!(q.satisfies_parity(Family::C));
        }
    }
}
