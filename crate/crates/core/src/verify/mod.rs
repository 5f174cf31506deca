//! Check records, the JSON-serializable report and the full suite runner.

mod report;
mod suite;

pub use report::{verify_uncertainty_relations, CheckRecord, CheckValue, VerificationReport};
pub use suite::{run_suite, uniform_grid, Mode, SuiteConfig};
