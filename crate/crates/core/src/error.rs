use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("node {node} is isolated; the normalized Laplacian is undefined")]
    IsolatedNode { node: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("degenerate quantity: {0}")]
    Degenerate(String),

    #[error("eigensolver failed to converge after {iterations} iterations (off-diagonal residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("no common cutoff at k = {k}: interval [{lower}, {upper}] is empty")]
    GapViolation { k: usize, lower: f64, upper: f64 },

    #[error("config: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::Validation(_)
            | Error::IsolatedNode { .. }
            | Error::DimensionMismatch { .. }
            | Error::Parameter(_)
            | Error::Config(_) => 1,
            Error::Io { .. } => 2,
            Error::Csv { source, .. } if source.is_io_error() => 2,
            Error::Csv { .. } => 1,
            Error::Degenerate(_) | Error::NoConvergence { .. } | Error::GapViolation { .. } => 3,
        }
    }
}
