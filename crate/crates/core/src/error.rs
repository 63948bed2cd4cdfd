use thiserror::Error;

/// Errors raised by constructions and decision procedures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("composition error: {0}")]
    Composition(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("dissection integrity error: {0}")]
    DissectionIntegrity(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
