use thiserror::Error;

/// Errors raised by the model and analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration field violates its invariant.
    #[error("invalid configuration field `{field}`: {reason}")]
    InvalidConfig { field: String, reason: String },

    /// The exact engine was asked for more environment spins than its cap.
    #[error("resource limit: N = {requested} environment spins exceeds the exact-engine cap of {cap}")]
    TooManySpins { requested: usize, cap: usize },

    #[error("index {index} out of range for {len} environment spins")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(field: &str, reason: impl Into<String>) -> Self {
        Error::InvalidConfig { field: field.to_string(), reason: reason.into() }
    }
}
