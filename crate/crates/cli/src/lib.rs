//! Reproduction reports over the `gex-core` checks.

pub mod claims;
pub mod config;
pub mod emit;
pub mod error;
pub mod report;

pub use config::{Command, Format, GenusSpec, RunConfig};
pub use emit::{emit_report, write_output};
pub use error::CliError;
pub use report::{run, VerificationReport};
