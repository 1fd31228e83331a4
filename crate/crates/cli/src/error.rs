use std::io;
use std::path::{Path, PathBuf};

use flume_core::flume::FlumeError;
use flume_core::forces::ForceError;
use flume_core::run::RunError;
use flume_core::uq::UqError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error("solver: {0}")]
    Solver(String),
    #[error("uq: {0}")]
    Uq(UqError),
    #[error("io: {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    /// 0 success, 2 config, 3 solver, 4 UQ failure share above threshold.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::MissingInput(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Uq(UqError::TooManyFailures { .. }) => 4,
            CliError::Uq(UqError::Structural(_)) => 3,
            CliError::Uq(_) => 2,
            CliError::Io { .. } => 1,
        }
    }

    pub fn io(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
        move |source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

impl From<RunError> for CliError {
    fn from(e: RunError) -> Self {
        match e {
            RunError::Flume(f) => f.into(),
            RunError::Solver(s) => CliError::Solver(s.to_string()),
        }
    }
}

impl From<FlumeError> for CliError {
    fn from(e: FlumeError) -> Self {
        match e {
            FlumeError::MalformedTrace(_) => CliError::MissingInput(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<ForceError> for CliError {
    fn from(e: ForceError) -> Self {
        match e {
            ForceError::Malformed(_) => CliError::MissingInput(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<UqError> for CliError {
    fn from(e: UqError) -> Self {
        match e {
            UqError::MissingLoad(h) => CliError::MissingInput(format!("no force history for wave height {h} m")),
            e => CliError::Uq(e),
        }
    }
}
