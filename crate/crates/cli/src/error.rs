use std::path::PathBuf;

use thiserror::Error;

/// Process exit statuses shared by every subcommand.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INTERNAL: i32 = 1;
    pub const DOMAIN: i32 = 2;
    pub const RESOURCE: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] irrot_core::Error),

    #[error("{}:{line}:{column}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("config {}:{line}: {message}", path.display())]
    Config {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid option: {0}")]
    Option(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization failed: {0}")]
    Serialize(String),

    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        use irrot_core::Error as E;
        match self {
            CliError::Core(e) => match e {
                E::ToleranceNotMet { .. } | E::NoPlanFound { .. } | E::NotCovered { .. } => exit::RESOURCE,
                E::NotBoundedAway { .. }
                | E::MismatchedParameters { .. }
                | E::TooSmallL { .. }
                | E::NotSelfAdjoint { .. }
                | E::OutOfRange { .. }
                | E::NotUnimodular { .. }
                | E::ZeroVector
                | E::InvalidInput(_) => exit::DOMAIN,
            },
            CliError::Parse { .. } | CliError::Config { .. } | CliError::Option(_) => exit::DOMAIN,
            CliError::Io { .. } | CliError::Serialize(_) | CliError::CheckFailed(_) => exit::INTERNAL,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
