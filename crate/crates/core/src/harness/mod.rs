//! Experiment presets, error metrics, convergence tables and file output.

mod config;
mod convergence;
mod experiment;
mod metrics;
mod output;

pub use config::{parse_pairs, ExperimentConfig, ExperimentId};
pub use convergence::{check_doubling, convergence_rates, format_table, ConvergenceRow};
pub use experiment::{convergence_study, run_experiment, run_single, ExperimentOutput, RunReport};
pub use metrics::{divergence_error, relative_error, relative_percentage_error};
pub use output::{
    read_convergence_csv, read_monitors_csv, read_snapshot, write_convergence_csv,
    write_monitors_csv, write_snapshot, write_summary, Snapshot,
};
