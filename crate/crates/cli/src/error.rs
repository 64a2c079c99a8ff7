use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    /// A value parsed but lies outside its valid domain.
    #[error("{}:{line}: {message}", path.display())]
    Domain {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{}: {message}", path.display())]
    Input { path: PathBuf, message: String },

    #[error(transparent)]
    Core(#[from] csjacket_core::Error),

    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub const USAGE: u8 = 2;
    pub const PARSE: u8 = 3;
    pub const NUMERIC: u8 = 4;

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => Self::USAGE,
            CliError::Parse { .. } | CliError::Input { .. } => Self::PARSE,
            CliError::Core(_) | CliError::Domain { .. } => Self::NUMERIC,
            CliError::Output(_) => 1,
        }
    }

    pub fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
