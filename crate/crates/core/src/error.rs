use thiserror::Error;

use crate::rootsys::Family;

/// A `(family, rank, r, m)` parameter tuple, used when reporting disagreements.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Triple {
    pub family: Family,
    pub rank: usize,
    pub r: u32,
    pub m: u32,
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{} r={} m={}", self.family, self.rank, self.r, self.m)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank {rank} is not legal for family {family}")]
    IllegalRank { family: Family, rank: usize },

    #[error("unknown Lie type `{0}`")]
    UnknownType(String),

    #[error("slope numerator r={r} must satisfy 1 <= r < h={h} and gcd(r, h) = 1")]
    BadSlopeNumerator { r: i64, h: u32 },

    #[error("m={0} must be nonnegative")]
    BadM(i64),

    #[error("family {0} is exceptional; no partition model is available")]
    NotClassical(Family),

    #[error("{0:?} is not a root of this system")]
    UnknownRoot(Vec<i32>),

    #[error("Cartan index {index} out of range for rank {rank}")]
    CartanIndexOutOfRange { index: usize, rank: usize },

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("centralizer oracles disagree for {triple}: partition={partition}, bruteforce={bruteforce}")]
    OracleMismatch {
        triple: Triple,
        partition: usize,
        bruteforce: usize,
    },

    #[error("numerical criterion and classification disagree on {} triple(s), first: {}", .0.len(), .0[0])]
    MismatchFound(Vec<Triple>),

    #[error("malformed input: {0}")]
    Input(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
