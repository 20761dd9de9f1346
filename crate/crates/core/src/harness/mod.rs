//! Verification driver: random corpus, oracles, checks and reports.

pub mod checks;
pub mod fixtures;
pub mod oracle;
pub mod random;
pub mod report;

pub use checks::{golden_name, mu_chain_stages, run_check};
pub use report::{CheckParams, CheckReport, CheckSpec, Failure, Mode, Status, CHECKS};
