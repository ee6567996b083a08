use std::path::PathBuf;

use thiserror::Error;

/// Failure of a command, carrying the process exit code it maps to.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Data(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) | CliError::Io { .. } => 3,
            CliError::Numeric(_) => 4,
        }
    }
}

impl From<benford::Error> for CliError {
    fn from(e: benford::Error) -> Self {
        use benford::Error as E;
        let msg = e.to_string();
        match e {
            E::InvalidBase(_)
            | E::Domain { .. }
            | E::InvalidParameter(_)
            | E::UnsupportedRatio(_) => CliError::Usage(msg),
            E::NonPositiveInput(_) | E::EmptyData | E::InsufficientData { .. } => {
                CliError::Data(msg)
            }
            E::Truncation { .. } | E::Quadrature { .. } | E::NotNormalized { .. } => {
                CliError::Numeric(msg)
            }
        }
    }
}
