use alloc::string::String;

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;

/// A syntax error, with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    /// A symbol was used that the declared signature does not contain.
    #[error("symbol `{symbol}` is not in the {signature} signature")]
    OutsideSignature { symbol: String, signature: String },

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    /// A search or enumeration ran out of its configured budget. This is never a verdict.
    #[error("{resource} budget of {limit} exceeded")]
    Budget { resource: &'static str, limit: u64 },

    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
