use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use qscissors::config::{self, Overrides, Scenario};

/// Three-mode Kerr-coupler simulator: spectral evolution, qubit-subspace
/// truncation, and W-state generation times.
#[derive(Parser, Debug)]
#[command(name = "qscissors", version, about)]
struct Cli {
    /// undriven | driven | compare | sweep | w-times
    scenario: String,

    /// Config file, one `key = value` per line
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output CSV path (default <scenario>.csv)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Sampling window [0, t-max]
    #[arg(long = "t-max")]
    t_max: Option<f64>,

    /// Sampling interval
    #[arg(long)]
    dt: Option<f64>,

    /// Inter-mode coupling strength
    #[arg(long)]
    epsilon: Option<f64>,

    /// All three Kerr constants at once
    #[arg(long)]
    chi: Option<f64>,

    /// Per-mode Fock levels
    #[arg(long)]
    cutoff: Option<usize>,

    /// How many W times to print (w-times scenario)
    #[arg(long = "n-times")]
    n_times: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> qscissors::Result<()> {
    let scenario: Scenario = cli.scenario.parse()?;
    let source = match &cli.config {
        Some(path) => std::fs::read_to_string(path)?,
        None => String::new(),
    };
    let overrides = Overrides {
        scenario: Some(scenario),
        out: cli.out.clone(),
        t_max: cli.t_max,
        dt: cli.dt,
        epsilon: cli.epsilon,
        chi: cli.chi,
        cutoff: cli.cutoff,
        n_times: cli.n_times,
    };
    let cfg = config::parse_config_with(&source, &overrides)?;
    qscissors::scenario::run_scenario(&cfg)
}
