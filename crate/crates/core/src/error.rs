use thiserror::Error;

/// Errors raised by the series engine, the numerics and the model registry.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The caller broke an operation's contract (bad arguments, wrong shapes).
    #[error("usage error: {0}")]
    Usage(String),
    /// A mathematically undefined request (division by a zero series, odd
    /// valuation under a square root, argument outside a function's domain).
    #[error("domain error: {0}")]
    Domain(String),
    /// A numeric routine failed to reach its tolerance. `estimate` carries
    /// the best value found.
    #[error("numeric error: {message} (best estimate {estimate:e}, error {error:e})")]
    Numeric {
        message: String,
        estimate: f64,
        error: f64,
    },
    #[error("unknown {kind} '{name}'; valid ids: {valid}")]
    NotFound {
        kind: &'static str,
        name: String,
        valid: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
