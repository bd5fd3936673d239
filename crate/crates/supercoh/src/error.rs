use thiserror::Error;

/// Failures reported by the command-line layer. Parse errors exit with
/// status 2, domain errors with status 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl From<supercoh_core::Error> for CliError {
    fn from(e: supercoh_core::Error) -> Self {
        match e {
            supercoh_core::Error::Parse(m) => CliError::Parse(m.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
