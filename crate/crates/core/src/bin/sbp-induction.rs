use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sbp_induction::harness::{format_table, parse_pairs, run_experiment, ExperimentConfig};
use sbp_induction::Error;

#[derive(Parser)]
#[command(name = "sbp-induction", version, about = "SBP-SAT solver for the resistive induction equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment on one grid or a doubling sequence of grids.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// File of `key = value` lines using the flag names; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Preset: 1, 2, 3 or custom.
    #[arg(long)]
    experiment: Option<String>,
    /// Interior order of the SBP operators: 2 or 4.
    #[arg(long)]
    order: Option<String>,
    /// Nodes per axis, comma separated for a convergence study.
    #[arg(long)]
    nodes: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    cfl: Option<String>,
    #[arg(long)]
    tfinal: Option<String>,
    /// dirichlet or mixed.
    #[arg(long)]
    bc: Option<String>,
    /// oracle, printed or none.
    #[arg(long)]
    forcing: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<String>,
}

impl RunArgs {
    fn pairs(&self) -> Result<Vec<(String, String)>, Error> {
        let mut pairs = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?;
                parse_pairs(&text)?
            }
            None => Vec::new(),
        };
        let flags = [
            ("experiment", &self.experiment),
            ("order", &self.order),
            ("nodes", &self.nodes),
            ("epsilon", &self.epsilon),
            ("cfl", &self.cfl),
            ("tfinal", &self.tfinal),
            ("bc", &self.bc),
            ("forcing", &self.forcing),
            ("out", &self.out),
        ];
        pairs.extend(
            flags
                .into_iter()
                .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone()))),
        );
        Ok(pairs)
    }
}

fn run(args: &RunArgs) -> Result<(), Error> {
    let config = ExperimentConfig::from_pairs(&args.pairs()?)?;
    let output = run_experiment(&config)?;
    for r in &output.reports {
        let err = r.error.map_or("-".to_string(), |e| format!("{e:.3e}"));
        println!(
            "{} {}x{}: error {err}, divergence {:.3e}, dt {:.3e}, steps {}",
            r.order, r.nodes, r.nodes, r.divergence_error, r.outcome.dt, r.outcome.steps
        );
    }
    if let Some(rows) = &output.rows {
        print!("{}", format_table(rows));
    }
    for f in &output.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Run(args) => match run(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(err) => {
                eprintln!("error: {err}");
                match err {
                    Error::NonFinite { .. } => ExitCode::from(3),
                    Error::Io { .. } => ExitCode::from(1),
                    _ => ExitCode::from(2),
                }
            }
        },
    }
}
