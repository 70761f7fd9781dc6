//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by cone, set and solver operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Vector or matrix dimensions do not agree.
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Input violates a structural requirement (empty set, zero denominator, ...).
    #[error("malformed input: {0}")]
    MalformedInput(String),

    /// The requested norm is not supported by this operation.
    #[error("unsupported norm for this operation: {0}")]
    UnsupportedNorm(&'static str),

    /// A probe functional was expected to lie in the dual cone but does not.
    #[error("probe functional is not in the dual cone")]
    InvalidProbe,

    /// A stated precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// The set representation variant is not supported by this operation.
    #[error("unsupported set variant for this operation: {0}")]
    UnsupportedVariant(&'static str),

    /// Two operands live over different ambient cones.
    #[error("ambient cone mismatch")]
    AmbientMismatch,

    /// An argument is outside the operation's domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
