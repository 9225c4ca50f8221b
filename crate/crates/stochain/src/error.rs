//! Crate-wide error type and the exit-code contract shared with the CLI.

use thiserror::Error;

/// One failed configuration invariant, with a path to the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| format!("  - {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, Error)]
pub enum Error {
    /// Configuration rejected. Carries every violation found, never just the first.
    #[error("invalid configuration:\n{}", format_violations(.0))]
    Config(Vec<Violation>),

    /// An argument fell outside its documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A simulation or solver produced a non-finite value.
    #[error("numerical error at {context}: {detail}")]
    Numerical { context: String, detail: String },

    /// Estimator misuse: empty samples, mismatched grids, degenerate bandwidth.
    #[error("estimator error: {0}")]
    Estimator(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("config parse error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn numerical(context: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Numerical {
            context: context.into(),
            detail: detail.into(),
        }
    }

    /// Process exit code for this error class: 1 for bad input, 2 for
    /// runtime/numerical failure. Exit 3 (verification failure) is decided
    /// by the `verify` command, not by an error value.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Domain(_) | Error::Json(_) => 1,
            Error::Numerical { .. } | Error::Estimator(_) | Error::Io(_) | Error::Csv(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
