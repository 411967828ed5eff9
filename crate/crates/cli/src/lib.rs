//! Batch harness: scenarios, suites, report rendering, the series cache and the acceptance
//! criteria.

pub mod acceptance;
pub mod cache;
pub mod emit;
pub mod scenario;
pub mod suites;

pub use emit::{emit, Format};
pub use scenario::{Scenario, ScenarioError, Suite};
pub use suites::run_suite;
