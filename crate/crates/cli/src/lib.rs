//! Driver library behind the `zomega` binary: configuration, sealed
//! certificate files, and the named acceptance blocks.

pub mod config;
pub mod error;
pub mod store;
pub mod suites;

pub use config::SuiteConfig;
pub use error::CliError;
