//! Root systems of the simple Lie algebras.
//!
//! Roots are stored as integer coordinate vectors over the simple roots
//! (Bourbaki numbering). The full root set is obtained by closing the simple
//! roots under the simple reflections, and the Coxeter number is read off the
//! highest root as `ht(theta) + 1`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }

    pub fn is_legal_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }

    /// Legal ranks of this family not exceeding `rank_max`, ascending.
    pub fn ranks_up_to(self, rank_max: usize) -> Vec<usize> {
        (1..=rank_max).filter(|&l| self.is_legal_rank(l)).collect()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(Error::UnknownType(s.to_string())),
        }
    }
}

/// A simple Lie type `X_l`. Type `A_l` is `sl_{l+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if family.is_legal_rank(rank) {
            Ok(SimpleType { family, rank })
        } else {
            Err(Error::IllegalRank { family, rank })
        }
    }

    /// Closed-form Coxeter numbers, kept as a cross-check for [`RootSystem::coxeter_number`].
    pub fn coxeter_number_table(self) -> u32 {
        let l = self.rank as u32;
        match self.family {
            Family::A => l + 1,
            Family::B | Family::C => 2 * l,
            Family::D => 2 * l - 2,
            Family::E => match l {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            Family::F => 12,
            Family::G => 6,
        }
    }

    /// Every legal type with rank at most `rank_max`, in family order.
    pub fn all_up_to(rank_max: usize) -> Vec<SimpleType> {
        Family::ALL
            .iter()
            .flat_map(|&f| f.ranks_up_to(rank_max).into_iter().map(move |rank| SimpleType { family: f, rank }))
            .collect()
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    /// Parses labels such as `E7`, `G2`, `a4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() < 2 || !s.is_char_boundary(1) {
            return Err(Error::UnknownType(s.to_string()));
        }
        let family: Family = s[..1].parse()?;
        let rank: usize = s[1..].parse().map_err(|_| Error::UnknownType(s.to_string()))?;
        SimpleType::new(family, rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub coeffs: Vec<i32>,
    pub height: i32,
}

impl Root {
    fn new(coeffs: Vec<i32>) -> Self {
        let height = coeffs.iter().sum();
        Root { coeffs, height }
    }

    pub fn is_positive(&self) -> bool {
        self.height > 0
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub ty: SimpleType,
    /// All roots, sorted lexicographically on their coefficient vectors.
    pub roots: Vec<Root>,
    /// Indices into `roots` of the simple roots, in Bourbaki order.
    pub simple_roots: Vec<usize>,
    /// Index into `roots` of the highest root.
    pub highest_root: usize,
    pub coxeter_number: u32,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)`.
    pub cartan_matrix: Vec<Vec<i32>>,
    /// Gram matrix of the simple roots, normalised so short roots have length 2.
    pub gram: Vec<Vec<i32>>,
    index: HashMap<Vec<i32>, usize>,
}

/// Symmetric bilinear form on the simple roots, scaled so the shortest root has square length 2.
fn gram_matrix(ty: SimpleType) -> Vec<Vec<i32>> {
    let l = ty.rank;
    let mut g = vec![vec![0i32; l]; l];
    let mut link = |i: usize, j: usize, v: i32| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match ty.family {
        Family::A => {
            for i in 0..l - 1 {
                link(i, i + 1, -1);
            }
        }
        Family::B => {
            for i in 0..l - 1 {
                link(i, i + 1, -2);
            }
        }
        Family::C => {
            for i in 0..l - 2 {
                link(i, i + 1, -1);
            }
            link(l - 2, l - 1, -2);
        }
        Family::D => {
            for i in 0..l - 2 {
                link(i, i + 1, -1);
            }
            link(l - 3, l - 1, -1);
        }
        Family::E => {
            link(0, 2, -1);
            link(1, 3, -1);
            for i in 2..l - 1 {
                link(i, i + 1, -1);
            }
        }
        Family::F => {
            link(0, 1, -2);
            link(1, 2, -2);
            link(2, 3, -1);
        }
        Family::G => link(0, 1, -3),
    }
    let diag: Vec<i32> = match ty.family {
        Family::A | Family::D | Family::E => vec![2; l],
        Family::B => (0..l).map(|i| if i + 1 < l { 4 } else { 2 }).collect(),
        Family::C => (0..l).map(|i| if i + 1 < l { 2 } else { 4 }).collect(),
        Family::F => vec![4, 4, 2, 2],
        Family::G => vec![2, 6],
    };
    for (i, d) in diag.into_iter().enumerate() {
        g[i][i] = d;
    }
    g
}

impl RootSystem {
    pub fn new(ty: SimpleType) -> Result<Self> {
        let ty = SimpleType::new(ty.family, ty.rank)?;
        let l = ty.rank;
        let gram = gram_matrix(ty);
        let cartan: Vec<Vec<i32>> = (0..l)
            .map(|i| (0..l).map(|j| 2 * gram[i][j] / gram[i][i]).collect())
            .collect();

        let unit = |i: usize| {
            let mut v = vec![0i32; l];
            v[i] = 1;
            v
        };
        let mut seen: BTreeSet<Vec<i32>> = BTreeSet::new();
        let mut frontier: Vec<Vec<i32>> = (0..l).map(unit).collect();
        for v in &frontier {
            seen.insert(v.clone());
        }
        while let Some(beta) = frontier.pop() {
            for (i, row) in cartan.iter().enumerate() {
                let pairing: i32 = beta.iter().zip(row).map(|(b, a)| b * a).sum();
                if pairing == 0 {
                    continue;
                }
                let mut image = beta.clone();
                image[i] -= pairing;
                if seen.insert(image.clone()) {
                    frontier.push(image);
                }
            }
        }

        let roots: Vec<Root> = seen.into_iter().map(Root::new).collect();
        let index: HashMap<Vec<i32>, usize> =
            roots.iter().enumerate().map(|(k, r)| (r.coeffs.clone(), k)).collect();
        let simple_roots = (0..l).map(|i| index[&unit(i)]).collect();
        let highest_root = (0..roots.len())
            .max_by_key(|&k| roots[k].height)
            .expect("root system is nonempty");
        let coxeter_number = (roots[highest_root].height + 1) as u32;

        Ok(RootSystem {
            ty,
            roots,
            simple_roots,
            highest_root,
            coxeter_number,
            cartan_matrix: cartan,
            gram,
            index,
        })
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn h(&self) -> u32 {
        self.coxeter_number
    }

    /// `dim g = rank + #roots`.
    pub fn dim(&self) -> usize {
        self.rank() + self.roots.len()
    }

    pub fn index_of(&self, coeffs: &[i32]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    /// Index of the root `roots[a] + roots[b]`, if that sum is a root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        let s: Vec<i32> = self.roots[a]
            .coeffs
            .iter()
            .zip(&self.roots[b].coeffs)
            .map(|(x, y)| x + y)
            .collect();
        self.index_of(&s)
    }

    pub fn negative_index(&self, a: usize) -> usize {
        let neg: Vec<i32> = self.roots[a].coeffs.iter().map(|c| -c).collect();
        self.index[&neg]
    }

    pub fn roots_of_height(&self, k: i32) -> Vec<&Root> {
        self.roots.iter().filter(|r| r.height == k).collect()
    }

    pub fn indices_of_height(&self, k: i32) -> Vec<usize> {
        (0..self.roots.len()).filter(|&i| self.roots[i].height == k).collect()
    }

    /// `(x, y)` for coefficient vectors over the simple roots.
    pub fn inner(&self, x: &[i32], y: &[i32]) -> i32 {
        let mut acc = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += xi * self.gram[i][j] * yj;
            }
        }
        acc
    }

    pub fn norm2(&self, a: usize) -> i32 {
        let c = &self.roots[a].coeffs;
        self.inner(c, c)
    }

    /// `<beta, alpha_i^vee>` for a root `beta`.
    pub fn pairing_with_coroot(&self, beta: usize, i: usize) -> i32 {
        self.roots[beta]
            .coeffs
            .iter()
            .zip(&self.cartan_matrix[i])
            .map(|(b, a)| b * a)
            .sum()
    }

    /// Coordinates of the coroot `alpha^vee` over the simple coroots.
    pub fn coroot_coeffs(&self, a: usize) -> Vec<i32> {
        let n = self.norm2(a);
        self.roots[a]
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * self.gram[j][j] / n)
            .collect()
    }

    /// Exponents with multiplicity, read off the height distribution of the
    /// positive roots: `k` occurs `#{ht = k} - #{ht = k+1}` times.
    pub fn exponents(&self) -> Vec<u32> {
        let h = self.h() as i32;
        let mut out = Vec::new();
        for k in 1..h {
            let here = self.roots_of_height(k).len() as i64;
            let next = self.roots_of_height(k + 1).len() as i64;
            for _ in 0..(here - next).max(0) {
                out.push(k as u32);
            }
        }
        out
    }
}

#[derive(Serialize)]
struct RootSystemJson<'a> {
    family: Family,
    rank: usize,
    h: u32,
    roots: Vec<&'a [i32]>,
}

impl Serialize for RootSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RootSystemJson {
            family: self.ty.family,
            rank: self.ty.rank,
            h: self.coxeter_number,
            roots: self.roots.iter().map(|r| r.coeffs.as_slice()).collect(),
        }
        .serialize(s)
    }
}
