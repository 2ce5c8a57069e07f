use qunimodal_core::{CertifyError, KroneckerError, LrError};

/// Command failure, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad input: exit code 1.
    #[error("{0}")]
    Usage(String),
    /// The computation contradicted itself: exit code 2.
    #[error("internal consistency error: {0}")]
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Consistency(_) => 2,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl From<KroneckerError> for CliError {
    fn from(e: KroneckerError) -> Self {
        match e {
            KroneckerError::Consistency(_) | KroneckerError::NegativeTwoRow { .. } => {
                CliError::Consistency(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<LrError> for CliError {
    fn from(e: LrError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CertifyError> for CliError {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::BaseVerification { .. } | CertifyError::DigestMismatch { .. } => {
                CliError::Consistency(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}
