//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by the exact-geometry kernel and the analysis layers.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Two operands (or an operand and a point) disagree on dimension.
    #[error("dimension mismatch: expected {expected}, found {found} ({context})")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        context: &'static str,
    },

    /// A value violates a structural invariant (zero generator, ragged
    /// matrix, zero denominator, ...).
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    /// Desk-scale guardrail: the double description method is exponential in
    /// the worst case, so oversized inputs are rejected loudly.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// A function would be improper (empty domain, empty piece list, or a
    /// value of minus infinity somewhere).
    #[error("improper function: {0}")]
    ImproperFunction(String),

    /// The argmin set was requested where the optimal value is infinite.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// A standing hypothesis of the verification (finite optimal value at
    /// the base parameter) does not hold.
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    /// A caller-supplied argument fails an operation's precondition, e.g. a
    /// proposed minimizer that is not optimal.
    #[error("precondition violation: {0}")]
    PreconditionViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dim(expected: usize, found: usize, context: &'static str) -> Self {
        Error::DimensionMismatch {
            expected,
            found,
            context,
        }
    }
}
