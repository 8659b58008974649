//! Library half of the `permprob` command-line tool.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod svg;

pub use config::{OutputFormat, RunConfig, Settings};
pub use error::CliError;
