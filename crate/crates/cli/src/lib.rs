//! Library side of the `kchern` command: JSON formats, the verification
//! suites and command dispatch. The binary is a thin wrapper around
//! [`commands::run`].

use std::fmt;

pub mod commands;
pub mod io;
pub mod suites;

/// Command failures, each mapped to its own exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Unreadable input or malformed JSON.
    Parse(String),
    /// Well-formed input that violates a mathematical precondition.
    Validation(String),
    /// A checked identity failed.
    Property(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Property(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Validation(m) => write!(f, "validation failure: {m}"),
            CliError::Property(m) => write!(f, "property failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<kchern_core::Error> for CliError {
    fn from(e: kchern_core::Error) -> Self {
        match e {
            kchern_core::Error::Parse(m) => CliError::Parse(m),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}
