use crate::error::{Error, Result};

/// One grid of a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    /// Nodes per axis.
    pub nodes: usize,
    /// Relative percentage error, when an exact solution exists.
    pub error: Option<f64>,
    pub error_rate: Option<f64>,
    pub divergence: f64,
    pub divergence_rate: Option<f64>,
    pub dt: f64,
    pub steps: usize,
}

impl ConvergenceRow {
    pub fn label(&self) -> String {
        format!("{0}x{0}", self.nodes)
    }
}

/// `log₂(e_prev / e_cur)` for each row after the first.
pub fn convergence_rates(errors: &[f64]) -> Vec<Option<f64>> {
    let mut out = vec![None; errors.len()];
    for i in 1..errors.len() {
        out[i] = Some((errors[i - 1] / errors[i]).log2());
    }
    out
}

/// Each grid must double the previous one, either in nodes (`2N`) or in
/// intervals (`2N − 1`).
pub fn check_doubling(nodes: &[usize]) -> Result<()> {
    if nodes.len() < 2 {
        return Err(Error::Config("a convergence study needs at least two grids".into()));
    }
    for w in nodes.windows(2) {
        if w[1] != 2 * w[0] && w[1] + 1 != 2 * w[0] {
            return Err(Error::Config(format!(
                "grid {} does not double grid {}",
                w[1], w[0]
            )));
        }
    }
    Ok(())
}

/// Plain-text table with rates at one decimal.
pub fn format_table(rows: &[ConvergenceRow]) -> String {
    let rate = |r: Option<f64>| r.map_or(String::new(), |r| format!("{r:.1}"));
    let mut s = format!(
        "{:<12} {:>10} {:>6} {:>12} {:>6}\n",
        "grid", "error", "rate", "divergence", "rate"
    );
    for row in rows {
        let err = row.error.map_or("-".to_string(), |e| format!("{e:.1e}"));
        s.push_str(&format!(
            "{:<12} {:>10} {:>6} {:>12} {:>6}\n",
            row.label(),
            err,
            rate(row.error_rate),
            format!("{:.1e}", row.divergence),
            rate(row.divergence_rate)
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rates() {
        let r = convergence_rates(&[2.1e-1, 5.7e-2, 5.7e-2, 5.7e-2 / 4.0]);
        assert_eq!(r[0], None);
        assert!((r[1].unwrap() - 1.881).abs() < 1e-3);
        assert_eq!(format!("{:.1}", r[1].unwrap()), "1.9");
        assert_eq!(r[2], Some(0.0));
        assert!((r[3].unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn doubling() {
        assert!(check_doubling(&[40, 80, 160]).is_ok());
        assert!(check_doubling(&[21, 41, 81]).is_ok());
        assert!(check_doubling(&[40, 100]).is_err());
        assert!(check_doubling(&[40]).is_err());
    }

    #[test]
    fn table_layout() {
        let rows = vec![
            ConvergenceRow {
                nodes: 40,
                error: Some(0.21),
                error_rate: None,
                divergence: 0.39,
                divergence_rate: None,
                dt: 1e-3,
                steps: 10,
            },
            ConvergenceRow {
                nodes: 80,
                error: Some(0.057),
                error_rate: Some(1.88),
                divergence: 0.1,
                divergence_rate: Some(1.96),
                dt: 5e-4,
                steps: 20,
            },
        ];
        let t = format_table(&rows);
        assert!(t.contains("80x80"));
        assert!(t.contains("5.7e-2"));
        assert!(t.contains("1.9"));
        assert_eq!(t.lines().count(), 3);
    }
}
