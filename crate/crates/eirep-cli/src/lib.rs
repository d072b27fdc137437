//! Document formats, realization and reporting behind the `eirep` binary.
//!
//! The binary stays a thin argument parser; everything it does lives here so
//! integration tests can drive the same code paths directly.

pub mod doc;
pub mod realize;
pub mod report;

pub use doc::{CliError, CliResult};
