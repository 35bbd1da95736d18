use serde_json::json;
use spinbath_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    /// Config does not match the schema or violates a field invariant.
    #[error("{message}")]
    Schema { field: Option<String>, message: String },

    #[error("{0}")]
    Resource(String),

    #[error("{0}")]
    Domain(String),

    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Schema { .. } => "schema",
            CliError::Resource(_) => "resource",
            CliError::Domain(_) => "domain",
            CliError::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Schema { .. } => 3,
            CliError::Resource(_) => 4,
            CliError::Domain(_) => 5,
            CliError::Io(_) => 6,
        }
    }

    /// The single-line JSON object written to stderr.
    pub fn to_json(&self) -> String {
        let field = match self {
            CliError::Schema { field, .. } => field.clone(),
            _ => None,
        };
        json!({ "error": { "kind": self.kind(), "field": field, "message": self.to_string() } }).to_string()
    }

    pub(crate) fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Schema { field: Some(field.into()), message: message.into() }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let message = e.to_string();
        match e {
            CoreError::InvalidConfig { field, .. } => CliError::Schema { field: Some(field), message },
            CoreError::Malformed(ref m) => CliError::Schema { field: backticked(m), message },
            CoreError::TooManySpins { .. } => CliError::Resource(message),
            CoreError::Domain(_) | CoreError::IndexOutOfRange { .. } => CliError::Domain(message),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        CliError::Schema { field: backticked(&message), message }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// serde names the offending field between backticks.
fn backticked(msg: &str) -> Option<String> {
    let start = msg.find('`')? + 1;
    let len = msg[start..].find('`')?;
    Some(msg[start..start + len].to_string())
}
