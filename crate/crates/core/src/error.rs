use thiserror::Error;

use crate::graph::Vertex;

/// Errors raised by graph construction, geometry and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} too large: exceeded cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("not gated: vertex {x} has no gate (witness {z})")]
    NotGated { x: Vertex, z: Vertex },

    #[error("tuple is not {kappa}-consistent: domains {u} and {v} give {value}")]
    InconsistentTuple { u: usize, v: usize, value: u32, kappa: u32 },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the category of this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Json(_) => 2,
            Error::Precondition(_) | Error::NotGated { .. } | Error::InconsistentTuple { .. } => 3,
            Error::CapExceeded { .. } => 4,
            Error::Io(_) | Error::Internal(_) => 1,
        }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
