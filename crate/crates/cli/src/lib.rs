//! Configuration parsing, subcommand dispatch and result rendering for the
//! `giant-atom` binary.

pub mod commands;
pub mod config;
pub mod number;
pub mod output;

use std::fmt;

pub use commands::{run, Command, Report};
pub use config::{parse_config, ConfigError, Format, RunConfig};
pub use output::{render, Cell, Table};

/// Failure of a CLI invocation, split by exit status.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad configuration, flags or files. Exit status 1.
    Input(String),
    /// The numerics failed or did not meet their tolerance. Exit status 2.
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<giant_atom_core::Error> for CliError {
    fn from(e: giant_atom_core::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}
