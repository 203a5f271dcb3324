//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Attempt to adjoin the square root of zero.
    #[error("degenerate radicand: cannot adjoin a square root of zero")]
    DegenerateRadicand,
    /// A square root was requested of an element the tower cannot express.
    #[error("unsupported radicand: {0}")]
    UnsupportedRadicand(String),
    /// A shift was requested for a color the field does not declare.
    #[error("unknown color: {0}")]
    UnknownColor(String),
    /// A symbol name used in a literal is not declared in the field.
    #[error("unknown symbol: {0}")]
    UnknownSymbol(String),
    /// Scalar literal could not be parsed.
    #[error("scalar parse error: {0}")]
    Parse(String),
    /// Division by a non-invertible element.
    #[error("non-invertible scalar: {0}")]
    NotInvertible(String),
    /// Grading mismatch (non-composable squares, wrong block, ...).
    #[error("grading error: {0}")]
    Grading(String),
    /// Malformed input data (JSON schema violations and similar).
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    /// A precondition of an operation was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
