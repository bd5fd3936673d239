//! Command-line front end, JSON formats and invariant suites for
//! [`supercoh_core`].

pub mod cli;
mod error;
pub mod formats;
pub mod verify;

pub use error::{CliError, CliResult};
