/// Errors produced by the numerical kernels and algebra constructions.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An argument violates a precondition (index range, admissibility, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Input outside the domain of the function (e.g. |x| > 1).
    #[error("domain error: {0}")]
    Domain(String),
    /// Evaluation at a pole of a coefficient function.
    #[error("pole: {0}")]
    Pole(String),
    /// A result violated a numeric-consistency contract (e.g. a value that
    /// must be real came out with a large imaginary part).
    #[error("numeric consistency: {0}")]
    NumericConsistency(String),
    /// An internal structural guarantee failed (e.g. a weight-space kernel
    /// that must be one-dimensional was not).
    #[error("internal consistency: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
