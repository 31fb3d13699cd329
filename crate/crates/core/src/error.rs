use thiserror::Error;

/// Failure modes shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[non_exhaustive]
pub enum Error {
    /// An argument lies outside the mathematical domain of the routine.
    #[error("domain: {0}")]
    Domain(String),
    /// A distribution has collapsed onto a lower-dimensional subspace, so the
    /// requested quantity diverges or is undefined.
    #[error("degenerate distribution: {0}")]
    Degenerate(String),
    /// The inputs describe a limit the library deliberately does not model.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Two routes that must agree disagreed by more than rounding allows.
    #[error("internal consistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
