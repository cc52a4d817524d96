use thiserror::Error;

/// Errors raised by the library. Every variant is a caller-visible failure;
/// none of them ever accompanies a partial result.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("n = {n} exceeds the enumeration ceiling {ceiling} for the {family} family")]
    CeilingExceeded {
        n: usize,
        ceiling: usize,
        family: String,
    },

    #[error("block {{{0}, {1}}} does not join an odd and an even point")]
    NotParityReversing(usize, usize),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("polynomial vanishes at q = {0}")]
    SingularPoint(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("a constant polynomial has no roots")]
    NoRoots,

    #[error(
        "root iteration did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
