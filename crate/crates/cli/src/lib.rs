//! Command-line front end: specimen files, CSV tables and reports.

pub mod commands;
pub mod error;
pub mod specfile;
pub mod table;

pub use commands::{run, Cli, Output};
pub use error::{CliError, CliResult};
