//! Exact computations for Coxeter connections on loop algebras of simple Lie algebras.

pub mod chevalley;
pub mod coxeter;
pub mod error;
pub mod linalg;
pub mod orbits;
pub mod rigidity;
pub mod rootsys;
pub mod strata;

pub use error::{Error, Result, Triple};
