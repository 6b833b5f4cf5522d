//! Verification pipelines, report types, and the self-test behind the
//! `torsor-verify` binary.

pub mod commands;
pub mod report;
pub mod selftest;

pub use commands::{cmd_cohomology, cmd_counterexample, cmd_saturation, UsageError};
pub use report::{CheckRecord, Status, VerificationReport};
pub use selftest::{run_selftest, SelftestConfig};
