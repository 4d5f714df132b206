use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Io,
    Parse,
    Config,
    Numerical,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}: line {line}: {msg}")]
    Parse {
        file: String,
        line: u64,
        msg: String,
    },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("samples out of order: t={current} ms follows t={previous} ms (participant {participant}, screen {screen})")]
    InputOrder {
        participant: String,
        screen: String,
        previous: f64,
        current: f64,
    },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("design error: {0}")]
    Design(String),
    #[error("invalid fixation plan: {0}")]
    Plan(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("numerical error: {0}")]
    Numerical(String),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Io { .. } => ErrorCategory::Io,
            Error::Parse { .. } => ErrorCategory::Parse,
            Error::Config(_) | Error::Plan(_) => ErrorCategory::Config,
            Error::InputOrder { .. } => ErrorCategory::Parse,
            Error::Degenerate(_)
            | Error::Design(_)
            | Error::Dimension { .. }
            | Error::Numerical(_) => ErrorCategory::Numerical,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
