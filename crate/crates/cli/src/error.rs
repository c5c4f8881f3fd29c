use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read config {path}: {message}")]
    Config { path: String, message: String },

    #[error("unknown experiment '{0}' (see list-experiments)")]
    UnknownExperiment(String),

    #[error("{0}")]
    Invalid(String),

    #[error("missing artifacts in {0}: no manifest.json found")]
    MissingArtifacts(String),

    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error(transparent)]
    Solver(#[from] rodwave::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config { .. } => "config",
            CliError::UnknownExperiment(_) => "unknown_experiment",
            CliError::Invalid(_) => "invalid_argument",
            CliError::MissingArtifacts(_) => "missing_artifacts",
            CliError::Io { .. } => "io",
            CliError::Solver(_) => "solver",
        }
    }

    /// Machine-readable report written to stderr on failure.
    pub fn report(&self) -> String {
        #[derive(Serialize)]
        struct Report<'a> {
            error: &'a str,
            message: String,
        }
        serde_json::to_string(&Report { error: self.kind(), message: self.to_string() })
            .expect("plain strings serialize")
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solver(_) => 3,
            CliError::Io { .. } => 4,
            _ => 2,
        }
    }
}

pub(crate) fn io_err(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.display().to_string(), source }
}

pub type CliResult<T> = Result<T, CliError>;
