use std::fmt;

/// Failure classes mapped to process exit codes: data/usage problems exit
/// with 2, internal errors (states the algorithms should never reach) with 1.
#[derive(Debug)]
pub enum CliError {
    Data(String),
    Internal(String),
}

impl CliError {
    pub fn data(msg: impl Into<String>) -> Self {
        CliError::Data(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Data(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Data(msg) => write!(f, "{msg}"),
            CliError::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<attndisco::Error> for CliError {
    fn from(e: attndisco::Error) -> Self {
        match e {
            attndisco::Error::Internal(msg) => CliError::Internal(msg),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Data(format!("malformed JSON: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
