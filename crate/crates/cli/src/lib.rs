//! Front end for `singequiv-core`: built-in fixtures, per-example claim
//! suites, a randomized property harness and JSON reports.

pub mod commands;
pub mod fixtures;
pub mod harness;
pub mod report;
pub mod verify;

pub use commands::{CliError, Input, Options};
pub use fixtures::FixtureId;
pub use report::{Claim, ClaimKind, Report};
