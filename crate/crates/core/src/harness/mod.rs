//! Experiment configuration, deterministic trial execution and output files.

pub mod config;
pub mod output;
pub mod runner;

use std::path::Path;

pub use config::{Algorithm, Engine, ExperimentConfig, ExperimentPlan};
pub use runner::{run_trial, run_trials, Summary, TrialOutcome, TrialRecord};

use crate::error::Result;

/// Runs every trial and returns the records with their summary.
pub fn run_experiment(config: &ExperimentConfig, workers: Option<usize>) -> Result<(Vec<TrialRecord>, Summary)> {
    let plan = config.resolve()?;
    let records = run_trials(&plan, workers)?;
    let summary = Summary::from_records(&records, plan.delta);
    Ok((records, summary))
}

/// Runs the experiment and writes the trial CSV to `out` and the summary to
/// its sibling `<stem>.summary.csv`.
pub fn run_experiment_to_file(
    config: &ExperimentConfig,
    out: &Path,
    workers: Option<usize>,
) -> Result<Summary> {
    let trials_file = output::create_output(out, config.force)?;
    let summary_file = output::create_output(&output::summary_path(out), config.force)?;
    let (records, summary) = run_experiment(config, workers)?;
    output::write_trials(trials_file, &records)?;
    output::write_summary(summary_file, &summary)?;
    Ok(summary)
}
