//! File formats, instance generation, order batching, reporting, route-map
//! rendering, and the `vrpstw` command-line entry point.

pub mod batch;
pub mod cli;
pub mod error;
pub mod format;
pub mod generate;
pub mod report;
pub mod svg;

pub use cli::run_cli;
pub use error::CliError;
