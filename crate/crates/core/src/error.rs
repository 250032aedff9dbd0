//! Error type shared by the planning and metrics modules.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    /// Malformed map document (ASCII or PGM). Carries a location when one is known.
    #[error("map format error: {msg}")]
    MapFormat { msg: String },

    /// An argument violated a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A caller broke an operation contract (e.g. a path crossing an obstacle).
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// Inconsistency that should be impossible given the inputs.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::MapFormat { msg: msg.into() }
    }

    pub(crate) fn format_at(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::MapFormat {
            msg: format!("line {line}, column {col}: {}", msg.into()),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
