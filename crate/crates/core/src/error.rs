use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one CLI exit code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("index s={s} is not a strict descent of the partition (need 2 <= s <= {len} and d_(s-1) > d_s)")]
    DescentRequired { s: usize, len: usize },

    #[error("power iteration did not converge after {iterations} iterations (best estimate {best}, residual {residual:e})")]
    Convergence {
        best: f64,
        residual: f64,
        iterations: usize,
    },

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::DescentRequired { .. } | Error::Parse(_) | Error::Domain(_) => 2,
            Error::ResourceCap(_) => 3,
            Error::Convergence { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
