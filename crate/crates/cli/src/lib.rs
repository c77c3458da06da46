//! Fixture ingestion, report tables and the subcommands of the `hsign` binary.

pub mod commands;
pub mod error;
pub mod fixture;
pub mod report;

pub use commands::*;
pub use error::CliError;
pub use fixture::Fixture;
pub use report::{Format, Table};
