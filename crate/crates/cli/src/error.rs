use thiserror::Error;

/// Failures of a run, grouped by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or invalid scenario.
    #[error("{0}")]
    Validation(String),
    /// Singular or non-finite values during a computation.
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<ncphase_core::Error> for CliError {
    fn from(e: ncphase_core::Error) -> Self {
        use ncphase_core::Error::*;
        match e {
            Singularity { .. } | NonFinite { .. } | Gradient(_) => CliError::Numerical(e.to_string()),
            Integration { ref source, .. } => match **source {
                Singularity { .. } | NonFinite { .. } | Gradient(_) => CliError::Numerical(e.to_string()),
                _ => CliError::Validation(e.to_string()),
            },
            _ => CliError::Validation(e.to_string()),
        }
    }
}
