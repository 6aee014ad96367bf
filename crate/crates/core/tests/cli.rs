use std::process::Command;

use sbp_induction::harness::{
    read_convergence_csv, read_monitors_csv, read_snapshot, run_experiment, ExperimentConfig,
    ExperimentId,
};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sbp-induction"))
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-15 * a.abs().max(b.abs())
}

#[test]
fn run_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["run", "--experiment", "2", "--order", "4", "--nodes", "10,20", "--tfinal", "0.1"])
        .args(["--out", dir.path().to_str().unwrap()])
        .status()
        .unwrap();
    assert!(status.success());
    for name in ["monitors_10.csv", "snapshot_20.txt", "summary_20.txt", "convergence.csv"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
    let snap = read_snapshot(&dir.path().join("snapshot_10.txt")).unwrap();
    assert_eq!(snap.rows.len(), 100);
    assert_eq!(snap.rows[0][..2], [0.0, 0.0]);
    assert_eq!(snap.rows[1][..2], [0.0, 1.0 / 9.0]);
    let rows = read_convergence_csv(&dir.path().join("convergence.csv")).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[1].error_rate.is_some());
    let monitors = read_monitors_csv(&dir.path().join("monitors_20.csv")).unwrap();
    assert!(monitors.windows(2).all(|w| w[1][0] > w[0][0]));
    assert!((monitors.last().unwrap()[0] - 0.1).abs() < 1e-15);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("out");
    std::fs::write(
        &cfg,
        format!(
            "experiment = 3\nepsilon = 0.001\nnodes = 12\ntfinal = 1.0\nout = {}\n",
            out.display()
        ),
    )
    .unwrap();
    let status = bin()
        .args(["run", "--config", cfg.to_str().unwrap(), "--tfinal", "0.05"])
        .status()
        .unwrap();
    assert!(status.success());
    let summary = std::fs::read_to_string(out.join("summary_12.txt")).unwrap();
    assert!(summary.contains("t_final = 5.0000000000000003e-2"), "{summary}");
    assert!(!summary.lines().any(|l| l.starts_with("error ")));
}

#[test]
fn configuration_errors_exit_nonzero() {
    for args in [
        vec!["run", "--order", "3"],
        vec!["run", "--nodes", "40,100", "--tfinal", "0.01"],
        vec!["run", "--experiment", "3", "--forcing", "oracle"],
        vec!["run", "--bc", "mixed", "--epsilon", "0"],
        vec!["run", "--config", "/nonexistent/file.cfg"],
    ] {
        let status = bin().args(&args).status().unwrap();
        assert!(!status.success(), "{args:?}");
    }
}

#[test]
fn instability_exits_nonzero_and_is_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "epsilon = 1.0\nsafety = 200\nnodes = 16\ntfinal = 20.0\nbc = dirichlet\n").unwrap();
    let out = dir.path().join("out");
    let status = bin()
        .args(["run", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
    let summary = std::fs::read_to_string(out.join("summary_16.txt")).unwrap();
    assert!(summary.contains("status = unstable"));
}

#[test]
fn emitted_numbers_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = ExperimentConfig::preset(ExperimentId::One);
    config.nodes = vec![12, 24];
    config.t_final = 0.2;
    config.monitor_cadence = 3;
    config.out = Some(dir.path().to_path_buf());
    let output = run_experiment(&config).unwrap();

    let report = &output.reports[1];
    let monitors = read_monitors_csv(&dir.path().join("monitors_24.csv")).unwrap();
    assert_eq!(monitors.len(), report.outcome.monitors.samples.len());
    for (row, m) in monitors.iter().zip(&report.outcome.monitors.samples) {
        assert!(rel_close(row[0], m.t) || row[0] == m.t);
        assert!(rel_close(row[1], m.energy));
        assert!(rel_close(row[2], m.divergence_norm));
    }

    let snap = read_snapshot(&dir.path().join("snapshot_24.txt")).unwrap();
    let field = &report.outcome.field;
    for (k, row) in snap.rows.iter().enumerate() {
        assert!(rel_close(row[2], field.component(0).values()[k]) || row[2] == 0.0);
        assert!(rel_close(row[3], field.component(1).values()[k]) || row[3] == 0.0);
    }

    let rows = read_convergence_csv(&dir.path().join("convergence.csv")).unwrap();
    for (parsed, orig) in rows.iter().zip(output.rows.as_ref().unwrap()) {
        assert_eq!(parsed.nodes, orig.nodes);
        assert!(rel_close(parsed.error.unwrap(), orig.error.unwrap()));
        assert!(rel_close(parsed.divergence, orig.divergence));
        assert_eq!(parsed.steps, orig.steps);
    }
}

#[test]
fn zero_data_gives_zero_monitors() {
    use sbp_induction::model::{rotation_velocity, ModelConfig, SchemeKind};
    use sbp_induction::scheme::SemiDiscrete;
    use sbp_induction::time::{integrate, RunMonitors, StepControl};
    use sbp_induction::{Discretization, Grid, SbpOrder, VectorField};
    use std::sync::Arc;

    let disc = Discretization::new(Grid::square(20, -1.0, 1.0).unwrap(), SbpOrder::Fourth).unwrap();
    let model = ModelConfig::new(Arc::new(rotation_velocity()), 0.01).with_bc(SchemeKind::Mixed);
    let control = StepControl::new(0.5, 0.3, disc.grid(), &*model.velocity, 0.01).unwrap();
    let mut scheme = SemiDiscrete::new(disc.clone(), model).unwrap();
    let out = integrate(&mut scheme, VectorField::zeros(disc.shape(), 2), &control, RunMonitors::default()).unwrap();
    for m in &out.monitors.samples {
        assert_eq!(m.energy, 0.0);
        assert_eq!(m.divergence_norm, 0.0);
    }
}
