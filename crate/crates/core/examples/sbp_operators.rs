//! Builds both SBP operators, prints their boundary closures and checks the
//! summation-by-parts property numerically.
//!
//! cargo run --example sbp_operators -- 12

use sbp_induction::{SbpOperator, SbpOrder};

fn main() -> sbp_induction::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    let h = 1.0 / (n - 1) as f64;
    for order in [SbpOrder::Second, SbpOrder::Fourth] {
        let op = SbpOperator::new(order, n, h)?;
        println!("{order} on {n} nodes (h = {h:.4})");
        println!("  norm weights / h: {:?}", &op.weights()[..op.boundary_width().max(1)]);
        for (i, row) in op.closure_top().iter().enumerate() {
            let pretty: Vec<String> = row.iter().map(|c| format!("{c:+.4}")).collect();
            println!("  closure row {i}: [{}]", pretty.join(" "));
        }

        // Q + Qᵀ should be diag(−1, 0, …, 0, 1).
        let d = op.dense_derivative();
        let mut defect = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let q = h * (op.weights()[i] * d[i][j] + op.weights()[j] * d[j][i]);
                let b = match (i == j, i) {
                    (true, 0) => -1.0,
                    (true, k) if k == n - 1 => 1.0,
                    _ => 0.0,
                };
                defect = defect.max((q - b).abs());
            }
        }
        println!("  max |Q + Qᵀ − B| = {defect:.2e}");

        // Derivative of sin on [0, 1].
        let x: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
        let f: Vec<f64> = x.iter().map(|x| x.sin()).collect();
        let df = op.apply(&f)?;
        let err = x.iter().zip(&df).fold(0.0f64, |m, (x, d)| m.max((d - x.cos()).abs()));
        println!("  max |D sin − cos| = {err:.2e}\n");
    }
    Ok(())
}
