use thiserror::Error;

/// Failure of a command, carrying its stable exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("infeasible construction: {0}")]
    Infeasible(String),
    #[error("contract violation: {0}")]
    Contract(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::InvalidInput(_) => 2,
            Self::Infeasible(_) => 3,
            Self::Contract(_) => 4,
        }
    }
}

impl From<gqd_core::Error> for CliError {
    fn from(e: gqd_core::Error) -> Self {
        match e {
            gqd_core::Error::ContractViolation(_) => Self::Contract(e.to_string()),
            gqd_core::Error::InvalidFrame(_) => Self::Infeasible(e.to_string()),
            other => Self::InvalidInput(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::InvalidInput(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::InvalidInput(format!("malformed JSON: {e}"))
    }
}
