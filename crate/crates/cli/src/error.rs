use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("failed to read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unknown preset `{0}` (available: fig1_sliding, fig2_hot_cold)")]
    UnknownPreset(String),

    #[error("evaluation failed at omega={omega}, qx={qx}, qy={qy}: {source}")]
    Evaluation {
        omega: f64,
        qx: f64,
        qy: f64,
        #[source]
        source: casimir_keldysh::Error,
    },

    #[error("invariant check failed: {0}")]
    CheckFailed(String),

    #[error("thread pool: {0}")]
    ThreadPool(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Process exit code: 2 for configuration problems, 3 for numerical
    /// tolerance failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::UnknownPreset(_) => 2,
            CliError::CheckFailed(_) => 3,
            CliError::Evaluation {
                source: casimir_keldysh::Error::ToleranceNotMet { .. },
                ..
            } => 3,
            _ => 1,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
