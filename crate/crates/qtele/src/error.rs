//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter is outside its admissible range.
    #[error("range error: {0}")]
    Range(String),

    /// A qubit or basis index is out of range.
    #[error("index error: {0}")]
    Index(String),

    /// Amplitudes that must form a unit vector do not.
    #[error("not normalized: {0}")]
    NotNormalized(String),

    /// A state does not have the shape an operation requires.
    #[error("unsupported state form: {0}")]
    UnsupportedForm(String),

    /// Input sits at a degenerate point where the operation is undefined.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A protocol run was configured inconsistently.
    #[error("configuration error: {0}")]
    Config(String),

    /// A payload cannot be serialized.
    #[error("encode error: {0}")]
    Encode(String),

    /// Payload bytes are not in canonical form.
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    /// A decoded payload violates a field invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// Measurement statistics are not consistent with the payload key.
    #[error("inconsistent statistics: {0}")]
    InconsistentStatistics(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
