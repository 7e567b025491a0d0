//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error type.
///
/// Every fallible operation returns one of these variants; the CLI maps each
/// variant to a stable machine-readable code (see [`Error::code`]).
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-contract input (dimension mismatch, zero
    /// polynomial where nonzero is required, duplicate points, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A certified numeric computation could not reach the requested
    /// tolerance within its precision budget.
    #[error("precision budget exhausted: {0}")]
    PrecisionFailure(String),

    /// The polynomial has no nonconstant integer divisor, so its height is
    /// infinite and cannot be reported as an interval.
    #[error("height is infinite: {0}")]
    InfiniteHeight(String),

    /// An enumeration would exceed the configured budget.
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    /// The target vector does not lie in the rational span of the given
    /// vectors.
    #[error("vector is not in the span of the given vectors")]
    NotInSpan,

    /// The operator is not diagonalizable over the complex numbers; the
    /// extremal product-body construction is not defined for it.
    #[error("operator is not diagonalizable: {0}")]
    NotDiagonalizable(String),

    /// Filesystem or stream failure while reading/writing interface files.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable error code used in CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::PrecisionFailure(_) => "precision_failure",
            Error::InfiniteHeight(_) => "infinite_height",
            Error::BudgetExceeded(_) => "budget_exceeded",
            Error::NotInSpan => "not_in_span",
            Error::NotDiagonalizable(_) => "not_diagonalizable",
            Error::Io(_) => "io",
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
