//! Configuration files, CSV output, figure scenarios and parallel parameter
//! sweeps on top of `gaussdyn-core`.

pub mod analysis;
pub mod config;
pub mod csv;
pub mod error;
pub mod format;
pub mod run;
pub mod scenario;
pub mod sweep;

pub use config::RunConfig;
pub use error::{CliError, Result};
