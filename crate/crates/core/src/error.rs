use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid modulus k = {0}: need k >= 3")]
    InvalidModulus(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{n} is not coprime to {modulus}")]
    NotCoprime { n: u64, modulus: u64 },

    #[error("the principal L-series diverges at s = {0}")]
    DivergentSeries(f64),

    #[error("the principal-character integral diverges")]
    DivergentIntegral,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A float recovery missed its residual gate; retrying with more
    /// precision is the caller's call.
    #[error("precision failure: residual {residual:.3e} exceeds {limit:.3e}")]
    PrecisionFailure { residual: f64, limit: f64 },

    #[error("branch tracking failed near s = {s}: step size underflow")]
    BranchTracking { s: f64 },

    #[error("invalid character label `{0}`")]
    InvalidLabel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
