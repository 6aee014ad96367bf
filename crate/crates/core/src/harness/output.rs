use std::fs;
use std::path::Path;

use super::convergence::ConvergenceRow;
use super::experiment::RunReport;
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::grid::Grid;
use crate::time::RunMonitors;

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(io_error(path))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(io_error(path))
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_num(s: &str, path: &Path) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Config(format!("{}: bad number '{s}'", path.display())))
}

/// `t,energy,divergence_norm` rows.
pub fn write_monitors_csv(path: &Path, monitors: &RunMonitors) -> Result<()> {
    let mut s = String::from("t,energy,divergence_norm\n");
    for m in &monitors.samples {
        s.push_str(&format!("{},{},{}\n", num(m.t), num(m.energy), num(m.divergence_norm)));
    }
    write(path, &s)
}

/// Rows of a monitors file as `[t, energy, divergence_norm]`.
pub fn read_monitors_csv(path: &Path) -> Result<Vec<[f64; 3]>> {
    read(path)?
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let cols: Vec<&str> = l.split(',').collect();
            if cols.len() != 3 {
                return Err(Error::Config(format!("{}: expected 3 columns", path.display())));
            }
            Ok([
                parse_num(cols[0], path)?,
                parse_num(cols[1], path)?,
                parse_num(cols[2], path)?,
            ])
        })
        .collect()
}

/// A parsed field snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    /// `[x, y, B1, B2, |B|]` per node in storage order.
    pub rows: Vec<[f64; 5]>,
}

/// Writes `x y B1 B2 magnitude`, one node per line in storage order
/// (x outer, y inner).
pub fn write_snapshot(path: &Path, grid: &Grid, field: &VectorField) -> Result<()> {
    if grid.dim() != 2 || field.ncomp() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: field.ncomp(),
        });
    }
    if field.shape() != grid.shape() {
        return Err(Error::GridMismatch);
    }
    let mag = field.magnitude();
    let mut s = String::from("x y B1 B2 magnitude\n");
    for (k, x) in grid.nodes() {
        s.push_str(&format!(
            "{} {} {} {} {}\n",
            num(x[0]),
            num(x[1]),
            num(field.component(0).values()[k]),
            num(field.component(1).values()[k]),
            num(mag.values()[k])
        ));
    }
    write(path, &s)
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    let text = read(path)?;
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some("x y B1 B2 magnitude") {
        return Err(Error::Config(format!("{}: missing snapshot header", path.display())));
    }
    let rows = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let v: Vec<f64> = l
                .split_whitespace()
                .map(|s| parse_num(s, path))
                .collect::<Result<_>>()?;
            <[f64; 5]>::try_from(v)
                .map_err(|_| Error::Config(format!("{}: expected 5 columns", path.display())))
        })
        .collect::<Result<_>>()?;
    Ok(Snapshot { rows })
}

/// `key = value` summary of one run.
pub fn write_summary(path: &Path, report: &RunReport) -> Result<()> {
    let mut s = String::new();
    s.push_str(&format!("order = {}\n", report.order.interior_order()));
    s.push_str(&format!("nodes = {}\n", report.nodes));
    if let Some(e) = report.error {
        s.push_str(&format!("error = {}\n", num(e)));
    }
    s.push_str(&format!("divergence_error = {}\n", num(report.divergence_error)));
    s.push_str(&format!("dt = {}\n", num(report.outcome.dt)));
    s.push_str(&format!("steps = {}\n", report.outcome.steps));
    s.push_str(&format!("t_final = {}\n", num(report.outcome.t_final)));
    s.push_str("status = ok\n");
    write(path, &s)
}

const CONVERGENCE_HEADER: &str = "nodes,error,error_rate,divergence_error,divergence_rate,dt,steps";

pub fn write_convergence_csv(path: &Path, rows: &[ConvergenceRow]) -> Result<()> {
    let opt = |x: Option<f64>| x.map_or(String::new(), num);
    let mut s = format!("{CONVERGENCE_HEADER}\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.nodes,
            opt(r.error),
            opt(r.error_rate),
            num(r.divergence),
            opt(r.divergence_rate),
            num(r.dt),
            r.steps
        ));
    }
    write(path, &s)
}

pub fn read_convergence_csv(path: &Path) -> Result<Vec<ConvergenceRow>> {
    let text = read(path)?;
    let opt = |s: &str| -> Result<Option<f64>> {
        if s.trim().is_empty() {
            Ok(None)
        } else {
            parse_num(s, path).map(Some)
        }
    };
    let bad = || Error::Config(format!("{}: malformed convergence row", path.display()));
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            if c.len() != 7 {
                return Err(bad());
            }
            Ok(ConvergenceRow {
                nodes: c[0].trim().parse().map_err(|_| bad())?,
                error: opt(c[1])?,
                error_rate: opt(c[2])?,
                divergence: parse_num(c[3], path)?,
                divergence_rate: opt(c[4])?,
                dt: parse_num(c[5], path)?,
                steps: c[6].trim().parse().map_err(|_| bad())?,
            })
        })
        .collect()
}
