//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by construction, validation, and file parsing.
#[derive(Debug, Error)]
pub enum Error {
    /// A matrix or state dimension is zero, mismatched, or over the cap.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// An operation that requires a square matrix got a rectangular one.
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },

    /// A numeric entry is NaN or infinite.
    #[error("non-finite entry at position {0}")]
    NonFinite(usize),

    /// An input assignment is inconsistent with a layout or alphabet.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A truth table, relation, or parameter set fails a precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A relation has an uncovered row or empty pair set.
    #[error("degenerate relation: {0}")]
    DegenerateRelation(String),

    /// Text file parsing failed; line numbers are 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Underlying I/O failure while reading a table or relation file.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
