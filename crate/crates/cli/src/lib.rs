//! Library side of the `qnorm` binary: argument definitions, command
//! implementations and output encoding. `main.rs` only prints and exits.

pub mod args;
mod commands;
pub mod output;
mod selftest;

use std::fmt;

use qnorm_core::diagrams::Enumerator;
use qnorm_core::Error;

pub use args::{Cli, Command};
pub use output::{Outcome, Rendered};

/// Failure classes, each with its own exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Bad flags or arguments outside a command's domain.
    Usage(String),
    /// A resource ceiling was hit.
    Ceiling(String),
    /// A cross-check between independent computations failed.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Ceiling(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Ceiling(m) => write!(f, "resource ceiling: {m}"),
            CliError::Internal(m) => write!(f, "internal check failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CeilingExceeded { .. } => CliError::Ceiling(e.to_string()),
            Error::Internal(_) | Error::NoConvergence { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Settings shared by every command.
#[derive(Clone, Debug)]
pub struct Context {
    pub enumerator: Enumerator,
    pub precision: usize,
}

impl Context {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let enumerator = match cli.threads {
            Some(t) => Enumerator::new(t)?,
            None => Enumerator::default(),
        };
        if !(64..=1 << 16).contains(&cli.precision_bits) {
            return Err(CliError::Usage(format!(
                "precision must lie in 64..=65536 bits, got {}",
                cli.precision_bits
            )));
        }
        Ok(Context {
            enumerator,
            precision: cli.precision_bits,
        })
    }
}

/// Runs one parsed invocation.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let ctx = Context::from_cli(cli)?;
    commands::dispatch(&cli.command, &ctx)
}
