//! Batch front end for `irrot-core`: configuration, file formats, subcommand
//! bodies and the seeded property suite.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod suite;

pub use config::{Overrides, RunConfig};
pub use error::{exit, CliError, CliResult};
