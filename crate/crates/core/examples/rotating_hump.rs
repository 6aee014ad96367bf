//! One full revolution of the rotating hump on [−1, 1]², mixed boundary
//! conditions, with the error against the exact solution at the end.
//!
//! cargo run --release --example rotating_hump -- 80 4

use sbp_induction::harness::{relative_error, run_single, ExperimentConfig, ExperimentId};
use sbp_induction::model::exact_rotating_hump;
use sbp_induction::SbpOrder;

fn main() -> sbp_induction::Result<()> {
    let mut args = std::env::args().skip(1);
    let nodes: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(60);
    let order = args
        .next()
        .and_then(|s| s.parse().ok())
        .and_then(SbpOrder::from_interior_order)
        .unwrap_or(SbpOrder::Fourth);

    let mut config = ExperimentConfig::preset(ExperimentId::One);
    config.order = order;
    config.nodes = vec![nodes];
    let report = run_single(&config, nodes)?;
    let out = &report.outcome;
    let grid = report.discretization.grid();
    let exact = exact_rotating_hump(out.t_final, grid)?;
    println!("{order} {nodes}², {} steps of {:.3e} to t = {:.4}", out.steps, out.dt, out.t_final);
    println!("relative error     {:.4e}", relative_error(grid, &out.field, &exact)?);
    println!("divergence error   {:.4e}", report.divergence_error);
    if let (Some(first), Some(last)) = (out.monitors.samples.first(), out.monitors.samples.last()) {
        println!("energy             {:.6} -> {:.6}", first.energy, last.energy);
    }
    Ok(())
}
