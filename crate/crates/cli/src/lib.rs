//! Command-line front end for `ebcount-core`: simulation grids from a TOML
//! config, estimates for CSV count matrices, and JSON reports rendered as
//! text or CSV tables.

pub mod commands;
pub mod config;
pub mod counts_csv;
pub mod error;
pub mod report;
pub mod tables;

pub use commands::{run, Cli};
pub use error::{CliError, Result};
