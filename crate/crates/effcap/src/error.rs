//! Error taxonomy shared by every module, plus the process exit codes the
//! command-line surface maps them to.

use thiserror::Error;

/// Everything that can go wrong across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a mathematical precondition (e.g. a probability
    /// outside its open interval, a negative SNR).
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration file or CLI argument failed validation. Carries the
    /// offending field so callers can point at it.
    #[error("invalid config field `{field}`: {message}")]
    Config { field: String, message: String },

    /// A root-finding bracket did not actually bracket a sign change.
    #[error("bracket error: no sign change of {context} on [{lo}, {hi}]")]
    Bracket { context: String, lo: f64, hi: f64 },

    /// An iterative routine ran out of its iteration budget. Carries the best
    /// estimate reached so far.
    #[error("{routine} exceeded {max_iter} iterations (best estimate {best})")]
    MaxIter {
        routine: String,
        max_iter: usize,
        best: f64,
    },

    /// An internal numerical failure: quadrature that will not converge, a
    /// cross-check disagreement, a derivative estimate with unstable sign.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// The requested compensation is mathematically infeasible within the
    /// search region (the collision loss cannot be absorbed).
    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("config parse error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Shorthand for a [`Error::Domain`].
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Shorthand for a field-level [`Error::Config`].
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit code for the CLI: 2 for configuration and domain errors,
    /// 3 for numeric infeasibility, 4 for internal numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Config { .. } | Error::Json(_) => 2,
            Error::Infeasible(_) => 3,
            Error::Bracket { .. } | Error::MaxIter { .. } | Error::Numeric(_) | Error::Io(_) => 4,
        }
    }
}

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
