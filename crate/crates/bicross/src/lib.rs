//! File formats, reports and subcommands behind the `bicross` binary.

pub mod cli;
pub mod commands;
pub mod error;
pub mod formats;

pub use cli::{run, Cli};
pub use error::CliError;
