use thiserror::Error;

/// Errors surfaced by the library. Each variant corresponds to a distinct
/// failure class so callers (and the CLI) can map them to exit behavior:
/// domain/contract errors are caller mistakes, budget/capacity errors are
/// resource limits that must never be silently truncated into wrong answers.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation
    /// (e.g. index 0, p <= 1).
    #[error("domain error: {0}")]
    Domain(String),

    /// A precondition documented on the operation was violated
    /// (e.g. a monotone rule requested outside its decreasing range).
    #[error("contract error: {0}")]
    Contract(String),

    /// The operation would exceed its search/enumeration budget; the result
    /// is withheld rather than truncated.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// A construction would exceed the representable index range.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A serialized document does not match the expected schema.
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
