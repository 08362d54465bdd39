//! Scenario engine: loads a scenario, runs a planner through an
//! observe/orient/decide/act loop, compares planners, validates plans under
//! sampled fading and keeps an append-only run log.

mod engine;
mod runlog;
mod scenario;
mod validate;

pub use engine::{
    compare, run, Comparison, ComparisonRow, LinkQuality, PlannerKind, StepRecord, Totals,
    TrajectoryReport,
};
pub use runlog::{append_record, parse_run_log, persist_run, read_run_log, RunRecord};
pub use scenario::{ChannelConfig, ModesConfig, Scenario, ScenarioFile, DEFAULT_SCENARIO};
pub use validate::{
    empirical_per, monte_carlo_validate, HopKind, LinkValidation, ValidationRecord, MIN_SAMPLES,
};

/// Parses scenario text with an inline mode table.
pub fn load_scenario(source: &str) -> crate::Result<Scenario> {
    Scenario::from_toml_str(source)
}
