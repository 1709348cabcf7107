use std::path::PathBuf;

use crate::lp::LpError;

/// Errors raised by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid step size {0}: must lie in [0, 1]")]
    InvalidStep(f64),

    #[error("invalid feasible set: {0}")]
    InvalidFeasibleSet(String),

    #[error("invalid problem data: {0}")]
    InvalidData(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Lp(#[from] LpError),

    #[error("subproblem failed at iteration {iteration}: {source}")]
    Subproblem {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{}: line {line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    ///
    /// `1` usage/configuration, `2` data, `3` solver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 1,
            Error::Parse { .. }
            | Error::Io { .. }
            | Error::InvalidData(_)
            | Error::InvalidFeasibleSet(_)
            | Error::DimensionMismatch { .. } => 2,
            Error::InvalidStep(_) | Error::Lp(_) | Error::Subproblem { .. } => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
