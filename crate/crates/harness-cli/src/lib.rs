//! Command-line harness: seeded oracles, cost reports and the `gtsov` binary.

pub mod cli;
pub mod error;
pub mod json;
pub mod oracles;
pub mod report;

pub use cli::{cli_dispatch, run, Cli, Format};
pub use error::{HarnessError, Result};
pub use report::RunReport;
