use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum HardyError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point {index} lies outside the open unit disk (|z| = {modulus})")]
    OutsideDisk { index: usize, modulus: f64 },

    #[error("points {first} and {second} coincide (pseudo-distance {distance:e})")]
    DuplicatePoint { first: usize, second: usize, distance: f64 },

    #[error("requested size {requested} exceeds the budget of {budget}")]
    BudgetExceeded { requested: u128, budget: u128 },

    #[error("epsilon {eps:e} lies outside the envelope support ({low:e}, {high:e})")]
    EnvelopeSupport { eps: f64, low: f64, high: f64 },

    #[error("sequence mass only supports {achieved} of {requested} blocks")]
    InsufficientMass { achieved: usize, requested: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("deleted Blaschke product underflows at node {0}")]
    DegenerateNode(usize),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, HardyError>;

impl HardyError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        HardyError::InvalidArgument(msg.into())
    }
}
