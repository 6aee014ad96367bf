use std::fs;
use std::path::PathBuf;

use super::config::ExperimentConfig;
use super::convergence::{check_doubling, convergence_rates, ConvergenceRow};
use super::metrics::{divergence_error, relative_percentage_error};
use super::output::{write_convergence_csv, write_monitors_csv, write_snapshot, write_summary};
use crate::error::{Error, Result};
use crate::grid::{Discretization, Grid};
use crate::model::{exact_rotating_hump, initial_hump};
use crate::sbp::SbpOrder;
use crate::scheme::SemiDiscrete;
use crate::time::{integrate, RunMonitors, RunOutcome, StepControl};

/// Result of one grid run.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub nodes: usize,
    pub order: SbpOrder,
    /// Relative percentage error at the final time, when an exact solution
    /// exists.
    pub error: Option<f64>,
    pub divergence_error: f64,
    pub outcome: RunOutcome,
    pub discretization: Discretization,
}

/// Runs the configured problem on an `nodes × nodes` grid.
pub fn run_single(config: &ExperimentConfig, nodes: usize) -> Result<RunReport> {
    config.validate()?;
    let grid = Grid::square(nodes, config.domain.0, config.domain.1)?;
    let disc = Discretization::new(grid, config.order)?;
    let model = config.model();
    let control = StepControl::with_safety(
        config.cfl,
        config.t_final,
        disc.grid(),
        &*model.velocity,
        model.epsilon,
        config.diffusion_safety,
    )?;
    let v0 = initial_hump(disc.grid())?;
    let mut scheme = SemiDiscrete::new(disc.clone(), model)?;
    let outcome = integrate(&mut scheme, v0, &control, RunMonitors::new(config.monitor_cadence))?;
    let error = if config.has_exact() {
        let exact = exact_rotating_hump(outcome.t_final, disc.grid())?;
        Some(relative_percentage_error(disc.grid(), &outcome.field, &exact)?)
    } else {
        None
    };
    Ok(RunReport {
        nodes,
        order: config.order,
        error,
        divergence_error: divergence_error(&disc, &outcome.field)?,
        outcome,
        discretization: disc,
    })
}

fn rows_from_reports(reports: &[RunReport]) -> Vec<ConvergenceRow> {
    let errors: Option<Vec<f64>> = reports.iter().map(|r| r.error).collect();
    let error_rates = errors
        .as_deref()
        .map(convergence_rates)
        .unwrap_or_else(|| vec![None; reports.len()]);
    let divs: Vec<f64> = reports.iter().map(|r| r.divergence_error).collect();
    let div_rates = convergence_rates(&divs);
    reports
        .iter()
        .enumerate()
        .map(|(i, r)| ConvergenceRow {
            nodes: r.nodes,
            error: r.error,
            error_rate: error_rates[i],
            divergence: r.divergence_error,
            divergence_rate: div_rates[i],
            dt: r.outcome.dt,
            steps: r.outcome.steps,
        })
        .collect()
}

/// Runs every grid of `config.nodes` (which must double) and tabulates
/// errors and rates.
pub fn convergence_study(config: &ExperimentConfig) -> Result<Vec<ConvergenceRow>> {
    check_doubling(&config.nodes)?;
    let reports = config
        .nodes
        .iter()
        .map(|&n| run_single(config, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(rows_from_reports(&reports))
}

/// Everything [`run_experiment`] produced.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub reports: Vec<RunReport>,
    /// Present when more than one grid was run.
    pub rows: Option<Vec<ConvergenceRow>>,
    pub files: Vec<PathBuf>,
}

/// Runs all grids and, if `config.out` is set, writes per-grid monitors,
/// snapshots and summaries plus `convergence.csv` for multi-grid runs.
/// An unstable run leaves a summary with its status before the error is
/// returned.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    if config.nodes.len() > 1 {
        check_doubling(&config.nodes)?;
    }
    if let Some(dir) = &config.out {
        fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.clone(),
            source,
        })?;
    }
    let mut files = Vec::new();
    let mut reports = Vec::new();
    for &n in &config.nodes {
        let report = match run_single(config, n) {
            Ok(r) => r,
            Err(err) => {
                if let (Some(dir), Error::NonFinite { t, component, node }) = (&config.out, &err) {
                    let path = dir.join(format!("summary_{n}.txt"));
                    let text = format!(
                        "order = {}\nnodes = {n}\nstatus = unstable\nt = {t:.16e}\ncomponent = {component}\nnode = {node}\n",
                        config.order.interior_order()
                    );
                    fs::write(&path, text).map_err(|source| Error::Io { path, source })?;
                }
                return Err(err);
            }
        };
        if let Some(dir) = &config.out {
            let grid = report.discretization.grid();
            let monitors = dir.join(format!("monitors_{n}.csv"));
            write_monitors_csv(&monitors, &report.outcome.monitors)?;
            let snapshot = dir.join(format!("snapshot_{n}.txt"));
            write_snapshot(&snapshot, grid, &report.outcome.field)?;
            let summary = dir.join(format!("summary_{n}.txt"));
            write_summary(&summary, &report)?;
            files.extend([monitors, snapshot, summary]);
        }
        reports.push(report);
    }
    let rows = (reports.len() > 1).then(|| rows_from_reports(&reports));
    if let (Some(dir), Some(rows)) = (&config.out, &rows) {
        let path = dir.join("convergence.csv");
        write_convergence_csv(&path, rows)?;
        files.push(path);
    }
    Ok(ExperimentOutput {
        reports,
        rows,
        files,
    })
}
