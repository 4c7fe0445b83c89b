use thiserror::Error;

use crate::paths::{Family, Model};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid {family} path {heights:?}: {reason}")]
    InvalidPath {
        family: Family,
        heights: Vec<i32>,
        reason: &'static str,
    },

    #[error("model {model} requires a {expected} path, got heights {heights:?}")]
    FamilyMismatch {
        model: Model,
        expected: Family,
        heights: Vec<i32>,
    },

    #[error("site {site} outside the admissible range of model {model} at L={l}")]
    SiteOutOfRange { model: Model, l: usize, site: usize },

    #[error("L={l} exceeds the cap {cap} for model {model}")]
    CapExceeded { model: Model, l: usize, cap: usize },

    #[error("kernel dimension is {dim}, expected 1")]
    KernelDimension { dim: usize },

    #[error("stationary weight at index {index} is not positive")]
    NonPositive { index: usize },

    #[error("position {position} is not an eligible contact")]
    NotAContact { position: usize },

    #[error("orbit size {got} differs from 2^{eligible}")]
    OrbitSize { got: usize, eligible: usize },

    #[error("shape {kind} out of range: {reason}")]
    ShapeRange { kind: &'static str, reason: String },

    #[error("polynomial division left a nonzero remainder at {at}")]
    NonExactDivision { at: String },

    #[error("value is not an integer: {0}")]
    NonIntegral(String),

    #[error("division by zero lattice value at (m,n)=({m},{n})")]
    ZeroPivot { m: i64, n: i64 },

    #[error("modular kernel did not converge after {primes} primes")]
    NoConvergence { primes: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
