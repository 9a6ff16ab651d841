//! Scenario files in, reports out.

pub mod error;
pub mod report;
pub mod run;
pub mod scenario;

pub use error::CliError;
pub use report::{render, Format, Report};
pub use run::{run, run_scenario, RunOptions, Verb};
pub use scenario::{load_scenario, parse_scenario, Scenario};
