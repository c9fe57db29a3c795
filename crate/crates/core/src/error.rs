use thiserror::Error;

/// Errors produced by the model and numerics layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative numerical method failed to converge.
    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: u32 },

    /// Inconsistent or unusable caller-supplied configuration.
    #[error("usage error: {0}")]
    Usage(String),

    /// A sweep column that is analytically monotone came back with an
    /// uptick beyond rounding noise — a numerical bug, not sampler jitter.
    #[error(
        "monotonicity violated in the column n = {n} at delta = {delta}: probability rose by {jump:e}"
    )]
    Monotonicity { n: u32, delta: f64, jump: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
