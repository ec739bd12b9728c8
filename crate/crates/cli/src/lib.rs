//! File formats, configuration, parallel drivers and the command-line
//! front end for `beliefkit-core`.

pub mod bench;
pub mod cli;
pub mod config;
pub mod error;
pub mod io;
pub mod parallel;

pub use error::{CliError, CliResult};
