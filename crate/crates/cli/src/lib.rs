//! File formats, experiment driver and subcommands behind the `attrwalk`
//! binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod experiment;
pub mod formats;

pub use error::{CliError, Result};
