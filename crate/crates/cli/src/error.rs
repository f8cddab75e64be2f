use std::path::PathBuf;

use crate::text::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    /// The inputs are well formed but the metric is not defined on them.
    #[error("{0}")]
    Precondition(String),
    #[error("{0} relation(s) violated")]
    Violations(usize),
}

impl CliError {
    pub fn status(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Io { .. } | CliError::Violations(_) => 1,
        }
    }

    pub fn pre(e: impl std::fmt::Display) -> Self {
        CliError::Precondition(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
