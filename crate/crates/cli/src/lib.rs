//! File formats, table emitters and the command-line front end for
//! `sylow2-core`.

pub mod app;
pub mod bench;
pub mod config;
pub mod error;
pub mod format;
pub mod parallel;
pub mod serial;
pub mod verify;

pub use app::{run, Cli};
pub use config::RunConfig;
pub use error::{CliError, CliResult};
pub use format::OutputFormat;
