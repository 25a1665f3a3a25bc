use std::io;
use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

/// Failures of a CLI command, each mapped to a process exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] entrench_core::Error),
    #[error("{}: {source}", path.display())]
    File {
        path: PathBuf,
        #[source]
        source: entrench_core::Error,
    },
    #[error("{message}")]
    Invalid { message: String, details: serde_json::Value },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    kind: &'a str,
    message: String,
    exit_code: u8,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    details: serde_json::Value,
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn file(path: impl Into<PathBuf>, source: entrench_core::Error) -> Self {
        CliError::File { path: path.into(), source }
    }

    /// 1 usage, 2 parse or validation, 3 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(_) | CliError::File { .. } | CliError::Invalid { .. } => 2,
            CliError::Io { .. } => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Core(_) | CliError::File { .. } => "invalid_input",
            CliError::Invalid { .. } => "validation",
            CliError::Io { .. } => "io",
        }
    }

    /// One-line JSON record for `--json`.
    pub fn to_json(&self) -> String {
        let details = match self {
            CliError::Invalid { details, .. } => details.clone(),
            _ => serde_json::Value::Null,
        };
        let record = ErrorRecord { kind: self.kind(), message: self.to_string(), exit_code: self.exit_code(), details };
        serde_json::to_string(&record).expect("error records serialize")
    }
}
