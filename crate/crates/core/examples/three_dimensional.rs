//! The Dirichlet scheme in three dimensions: a rotating field in a cube,
//! with the energy bound and a short time integration.
//!
//! cargo run --release --example three_dimensional

use std::sync::Arc;

use sbp_induction::model::{ModelConfig, Rotation};
use sbp_induction::scheme::{sup_energy_rate, SemiDiscrete};
use sbp_induction::time::{integrate, RunMonitors, StepControl};
use sbp_induction::{Discretization, Grid, SbpOrder, VectorField};

fn main() -> sbp_induction::Result<()> {
    let eps = 0.01;
    let disc = Discretization::new(Grid::cube(13, -1.0, 1.0)?, SbpOrder::Fourth)?;
    let model = ModelConfig::new(Arc::new(Rotation::spatial()), eps);
    let mut scheme = SemiDiscrete::new(disc.clone(), model)?;
    let est = sup_energy_rate(&scheme, 300)?;
    println!("largest energy rate {:.3e} (spectral width {:.3e})", est.sup, est.scale());

    // A compactly concentrated, divergence-free field.
    let v0 = VectorField::from_fn(disc.grid(), 3, |x| {
        let g = (-10.0 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2])).exp();
        [-x[1] * g, x[0] * g, 0.0]
    });
    println!("initial ‖div‖∞ = {:.3e}", disc.div(&v0)?.max_abs());
    let control = StepControl::new(0.5, 0.5, disc.grid(), &Rotation::spatial(), eps)?;
    let out = integrate(&mut scheme, v0, &control, RunMonitors::new(2))?;
    for s in &out.monitors.samples {
        println!("t = {:.3}  energy {:.6e}", s.t, s.energy);
    }
    Ok(())
}
