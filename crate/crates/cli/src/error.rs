use std::path::PathBuf;

use thiserror::Error;

/// Failures that end a command, each tied to a documented exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("{context}: {source}")]
    Validation {
        context: String,
        #[source]
        source: entroplex::Error,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io { .. } => 2,
            CliError::Validation { .. } => 3,
        }
    }

    pub fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}

/// Attaches a context string to library errors, which become exit code 3.
pub trait Context<T> {
    fn context(self, what: impl Into<String>) -> Result<T, CliError>;
}

impl<T> Context<T> for entroplex::Result<T> {
    fn context(self, what: impl Into<String>) -> Result<T, CliError> {
        self.map_err(|source| CliError::Validation {
            context: what.into(),
            source,
        })
    }
}
