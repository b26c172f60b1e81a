//! File formats, reports and command implementations behind the `nilrf` binary.

pub mod commands;
pub mod error;
pub mod file;
pub mod report;

pub use error::{CliError, CliResult};
pub use file::GroupFile;
pub use report::Report;
