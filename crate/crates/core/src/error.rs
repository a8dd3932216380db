use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Adaptive quadrature hit its depth limit before meeting tolerance.
    #[error("quadrature did not converge: estimate {estimate}, error bound {error_bound}")]
    Convergence { estimate: f64, error_bound: f64 },

    #[error("{}:{line}:{column}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    /// A well-formed scenario that violates a geometric or planner invariant.
    #[error("invalid `{field}`: {message}")]
    Semantic { field: String, message: String },

    #[error("scenario digest mismatch for {name}: expected {expected}, found {found}")]
    DigestMismatch {
        name: String,
        expected: String,
        found: String,
    },

    #[error("cannot render: {0}")]
    UnsupportedRender(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn semantic(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Semantic {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Convergence { .. } => 3,
            _ => 2,
        }
    }
}
