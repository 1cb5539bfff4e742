//! Input parsing with stable, machine-readable error codes.

use polystab_core::{Error as CoreError, ParametricProblem, Rat, RatVec};
use thiserror::Error;

/// Coarse error classification surfaced in exit codes and messages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCode {
    /// Malformed JSON or a document that does not match the schema.
    SchemaViolation,
    /// Structurally valid input describing an improper function.
    ImproperFunction,
    /// Structurally valid input with inconsistent dimensions.
    DimensionMismatch,
    /// A hypothesis or precondition of the requested operation fails.
    BadRequest,
    /// The seeded generator could not produce a proper instance.
    GenerationFailure,
    /// File system problem.
    Io,
}

impl ErrorCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ErrorCode::SchemaViolation => "schema-violation",
            ErrorCode::ImproperFunction => "improper-function",
            ErrorCode::DimensionMismatch => "dimension-mismatch",
            ErrorCode::BadRequest => "bad-request",
            ErrorCode::GenerationFailure => "generation-failure",
            ErrorCode::Io => "io-error",
        }
    }
}

#[derive(Debug, Clone, Error)]
#[error("{}: {message}", code.as_str())]
pub struct CliError {
    pub code: ErrorCode,
    pub message: String,
}

impl CliError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let code = match &e {
            CoreError::DimensionMismatch { .. } => ErrorCode::DimensionMismatch,
            CoreError::ImproperFunction(_) => ErrorCode::ImproperFunction,
            CoreError::HypothesisViolation(_)
            | CoreError::PreconditionViolation(_)
            | CoreError::NoSolution(_) => ErrorCode::BadRequest,
            _ => ErrorCode::SchemaViolation,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new(ErrorCode::Io, e.to_string())
    }
}

/// Parses a problem document, mapping validation failures to distinct
/// error codes. Serde folds the crate's construction errors into its own
/// message, so classification goes by the stable message prefixes.
pub fn parse_problem(text: &str) -> Result<ParametricProblem, CliError> {
    serde_json::from_str::<ParametricProblem>(text).map_err(|e| {
        let message = e.to_string();
        let code = if message.contains("improper function") {
            ErrorCode::ImproperFunction
        } else if message.contains("dimension mismatch") {
            ErrorCode::DimensionMismatch
        } else {
            ErrorCode::SchemaViolation
        };
        CliError::new(code, message)
    })
}

/// Parses a comma-separated rational vector such as `1/2,-3`. The empty
/// string is the zero-dimensional vector.
pub fn parse_vector(text: &str) -> Result<RatVec, CliError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(RatVec::new(vec![]));
    }
    let entries = text
        .split(',')
        .map(|t| t.parse::<Rat>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::new(ErrorCode::SchemaViolation, e.to_string()))?;
    Ok(RatVec::new(entries))
}
