use thiserror::Error;

/// Failure classes, one per exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// malformed input or an unmet precondition
    #[error("{0}")]
    Validation(String),
    /// the data needed to evaluate is missing or not computable
    #[error("{0}")]
    Unsupported(String),
    /// two evaluators disagreed
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::CrossCheck(_) => 4,
        }
    }
}

impl From<cwl_core::Error> for CliError {
    fn from(e: cwl_core::Error) -> CliError {
        if e.is_unsupported_data() {
            CliError::Unsupported(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::Validation(format!("bad presentation file: {e}"))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Validation(e.to_string())
    }
}
