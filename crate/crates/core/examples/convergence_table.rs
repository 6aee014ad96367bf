//! Grid-doubling study with observed rates, printed as a table and written
//! as CSV next to per-run summaries.
//!
//! cargo run --release --example convergence_table -- 2 /tmp/study

use sbp_induction::harness::{format_table, run_experiment, ExperimentConfig, ExperimentId};
use sbp_induction::SbpOrder;

fn main() -> sbp_induction::Result<()> {
    let mut args = std::env::args().skip(1);
    let order = args
        .next()
        .and_then(|s| s.parse().ok())
        .and_then(SbpOrder::from_interior_order)
        .unwrap_or(SbpOrder::Second);
    let out = args.next().map(std::path::PathBuf::from);

    let mut config = ExperimentConfig::preset(ExperimentId::Two);
    config.order = order;
    config.nodes = vec![20, 40, 80];
    config.out = out;
    let output = run_experiment(&config)?;
    if let Some(rows) = &output.rows {
        print!("{}", format_table(rows));
    }
    for path in &output.files {
        println!("wrote {}", path.display());
    }
    Ok(())
}
