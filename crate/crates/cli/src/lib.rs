//! Command-line front end for `xxring`: single-point queries, table
//! reproduction, parameter sweeps and oracle verification.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

pub use args::Cli;
pub use commands::{run, Status};
pub use error::CliError;
pub use output::{Cell, RunManifest, Table};
