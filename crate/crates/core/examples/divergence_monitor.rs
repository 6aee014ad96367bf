//! Tracks the discrete divergence of an initially solenoidal field while it
//! is advected and diffused, for both operator orders. No exact solution is
//! needed.
//!
//! cargo run --release --example divergence_monitor

use std::sync::Arc;

use sbp_induction::model::{initial_hump, rotation_velocity, ModelConfig, SchemeKind};
use sbp_induction::scheme::SemiDiscrete;
use sbp_induction::time::{integrate, RunMonitors, StepControl};
use sbp_induction::{Discretization, Grid, SbpOrder};

fn main() -> sbp_induction::Result<()> {
    let eps = 0.05;
    for order in [SbpOrder::Second, SbpOrder::Fourth] {
        let disc = Discretization::new(Grid::square(41, -1.0, 1.0)?, order)?;
        let model = ModelConfig::new(Arc::new(rotation_velocity()), eps).with_bc(SchemeKind::Mixed);
        let control = StepControl::new(0.5, 1.0, disc.grid(), &rotation_velocity(), eps)?;
        let v0 = initial_hump(disc.grid())?;
        let mut scheme = SemiDiscrete::new(disc, model)?;
        let out = integrate(&mut scheme, v0, &control, RunMonitors::new(40))?;
        println!("{order}:");
        for s in &out.monitors.samples {
            println!("  t = {:.3}  energy {:.5e}  ‖div‖ {:.4e}", s.t, s.energy, s.divergence_norm);
        }
    }
    Ok(())
}
