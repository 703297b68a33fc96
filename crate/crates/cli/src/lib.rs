//! Command implementations behind the `jacsyz` binary.

pub mod commands;
pub mod config;
pub mod report;

pub use config::{Config, Format};
pub use report::Report;

/// Stable process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const INVALID_INPUT: u8 = 2;
    pub const FAILURE: u8 = 3;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: exit::USAGE, message: message.into() }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        CliError { code: exit::INVALID_INPUT, message: message.into() }
    }

    pub fn failure(message: impl Into<String>) -> Self {
        CliError { code: exit::FAILURE, message: message.into() }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

/// Text for standard output plus the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    /// Progress and summary lines for the error stream.
    pub stderr: String,
    pub code: u8,
}

impl Output {
    pub fn ok(stdout: String) -> Self {
        Output { stdout, stderr: String::new(), code: exit::SUCCESS }
    }
}
