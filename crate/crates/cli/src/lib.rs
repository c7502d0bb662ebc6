//! Experiments behind the `gmseq` command: norm reports, class
//! diagnostics, reproductions of the counterexample propositions, and
//! equivalence sweeps.

use std::fmt;
use std::io::Write;
use std::path::Path;

pub mod config;
pub mod experiments;
pub mod fixtures;
pub mod reproduce;

pub use config::{Command, ExperimentConfig, Source};
pub use experiments::{run_classify, run_equivalence, run_multiplier, run_norms};
pub use reproduce::{run_reproduce, ReproductionTable};

/// Bad arguments, unreadable input or a rejected sequence. Maps to exit
/// code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(String);

impl ConfigError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

impl From<gmseq::Error> for ConfigError {
    fn from(e: gmseq::Error) -> Self {
        Self(e.to_string())
    }
}

impl From<std::io::Error> for ConfigError {
    fn from(e: std::io::Error) -> Self {
        Self(e.to_string())
    }
}

impl From<serde_json::Error> for ConfigError {
    fn from(e: serde_json::Error) -> Self {
        Self(e.to_string())
    }
}

/// Writes `bytes` to `path`, or to stdout when there is none.
pub fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), ConfigError> {
    match path {
        Some(p) => {
            std::fs::write(p, bytes).map_err(|e| ConfigError::new(format!("{}: {e}", p.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}
