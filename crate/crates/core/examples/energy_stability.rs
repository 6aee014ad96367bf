//! Estimates the largest semi-discrete energy growth rate of both boundary
//! treatments and compares it with sampled fields. Also shows what goes
//! wrong when the resistive penalty is dropped.
//!
//! cargo run --release --example energy_stability

use std::sync::Arc;

use sbp_induction::model::{rotation_velocity, ModelConfig, SchemeKind};
use sbp_induction::scheme::{build_penalties, sampled_energy_rates, sup_energy_rate, SemiDiscrete};
use sbp_induction::{Discretization, Grid, SbpOrder};

fn main() -> sbp_induction::Result<()> {
    let eps = 0.01;
    println!("{:>6} {:>10} {:>6} {:>12} {:>14}", "order", "bc", "nodes", "sup rate", "max sampled");
    for order in [SbpOrder::Second, SbpOrder::Fourth] {
        for kind in [SchemeKind::Dirichlet, SchemeKind::Mixed] {
            for n in [16, 32] {
                let disc = Discretization::new(Grid::square(n, -1.0, 1.0)?, order)?;
                let model = ModelConfig::new(Arc::new(rotation_velocity()), eps).with_bc(kind);
                let scheme = SemiDiscrete::new(disc, model)?;
                let est = sup_energy_rate(&scheme, 200)?;
                let samples = sampled_energy_rates(&scheme, 200, 1)?;
                let max = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                println!("{:>6} {:>10} {n:>6} {:>12.3e} {max:>14.3e}", order.to_string(), kind.to_string(), est.sup);
            }
        }
    }

    println!("\nDirichlet scheme without the resistive penalty:");
    for n in [16, 32] {
        let disc = Discretization::new(Grid::square(n, -1.0, 1.0)?, SbpOrder::Second)?;
        let model = ModelConfig::new(Arc::new(rotation_velocity()), eps);
        let mut pen = build_penalties(&model, &disc, SchemeKind::Dirichlet, 0.0)?;
        pen.faces.iter_mut().for_each(|f| f.resistive = 0.0);
        let scheme = SemiDiscrete::new(disc, model)?.with_penalties(pen)?;
        println!("  {n}²: sup rate {:.3e}", sup_energy_rate(&scheme, 200)?.sup);
    }
    Ok(())
}
