//! Builds the forcing that makes the rotating hump an exact solution, from
//! the residual of the continuous operator, and compares it with the closed
//! form expression.
//!
//! cargo run --example manufactured_forcing

use std::sync::Arc;

use sbp_induction::model::{forcing_printed, forcing_residual_oracle, rotation_velocity, ModelConfig, RotatingHump};
use sbp_induction::Grid;

fn main() -> sbp_induction::Result<()> {
    let grid = Grid::square(41, -1.0, 1.0)?;
    for eps in [0.0, 0.01, 0.1] {
        let model = ModelConfig::new(Arc::new(rotation_velocity()), eps).with_exact(Arc::new(RotatingHump));
        for t in [0.0, 1.0, 2.5] {
            let residual = forcing_residual_oracle(t, &grid, &model)?;
            let closed = forcing_printed(t, &grid, eps)?;
            let mut diff = residual.clone();
            diff.axpy(-1.0, &closed)?;
            println!(
                "ε = {eps:<5} t = {t:<4} |F| = {:.3e}  closed form differs by {:.3e} / {:.3e}",
                residual.max_abs(),
                diff.component(0).max_abs(),
                diff.component(1).max_abs()
            );
        }
    }
    Ok(())
}
