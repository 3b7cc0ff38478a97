use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A configuration value violates an invariant. `name` is the offending key.
    #[error("invalid value for `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    /// A function was evaluated outside its mathematical domain.
    #[error("{function}: argument out of domain ({reason})")]
    Domain {
        function: &'static str,
        reason: String,
    },

    #[error("{function}: numerical evaluation did not converge ({detail})")]
    NonConvergence {
        function: &'static str,
        detail: String,
    },

    #[error("configuration file {path} not found")]
    ConfigNotFound { path: PathBuf },

    #[error("cannot parse {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(
        "consistency gate failed: max |montecarlo - analytic| / half_width = {worst:.3} exceeds {gate} ({curve})"
    )]
    ConsistencyGate {
        worst: f64,
        gate: f64,
        curve: String,
    },

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(function: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            function,
            reason: reason.into(),
        }
    }

    pub(crate) fn with_context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// Process exit code used by the command-line harness.
    ///
    /// 2 for validation failures, 3 for a failed consistency gate, 4 for
    /// numerical convergence failures and 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter { .. }
            | Error::Domain { .. }
            | Error::ConfigNotFound { .. }
            | Error::Parse { .. } => 2,
            Error::ConsistencyGate { .. } => 3,
            Error::NonConvergence { .. } => 4,
            Error::Io { .. } => 1,
            Error::Context { source, .. } => source.exit_code(),
        }
    }
}
