//! Library half of the `torus-link` command: input parsing, command dispatch
//! and report rendering.

pub mod config;
pub mod error;
pub mod json;
pub mod run;

pub use config::{parse_input, InputConfig, Mode};
pub use error::CliError;
pub use run::{run, Command, Report, RunOptions};
