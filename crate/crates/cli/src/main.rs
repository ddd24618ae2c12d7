use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use jaynes_core::runner::{self, ConfigOverrides, ScenarioConfig};
use jaynes_core::{Error, Result};

/// Run one Jaynes-Cummings scenario and write CSV, summary and oracle reports.
#[derive(Debug, Parser)]
#[command(name = "jcsim", version)]
struct Args {
    /// JSON config file; flags below override its keys.
    config: Option<PathBuf>,

    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    field_dim: Option<usize>,
    #[arg(long)]
    mean_photon: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    n_points: Option<usize>,
    #[arg(long)]
    layers: Option<usize>,
    /// Also write `<prefix>.oracle.json`.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    oracle_compare: Option<bool>,
    #[arg(long)]
    oracle_case_b_frequency: Option<f64>,
    #[arg(long)]
    output_prefix: Option<PathBuf>,
}

impl Args {
    fn overrides(&self) -> ConfigOverrides {
        ConfigOverrides {
            case: self.case.clone(),
            field_dim: self.field_dim,
            mean_photon: self.mean_photon,
            alpha: self.alpha,
            t_max: self.t_max,
            n_points: self.n_points,
            layers: self.layers,
            oracle_compare: self.oracle_compare,
            oracle_case_b_frequency: self.oracle_case_b_frequency,
            output_prefix: self.output_prefix.clone(),
        }
    }
}

fn load(args: &Args) -> Result<ScenarioConfig> {
    let base = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            runner::parse_overrides(&text)?
        }
        None => ConfigOverrides::default(),
    };
    ScenarioConfig::from_overrides(base.merge(args.overrides()))
}

fn run(args: &Args) -> Result<()> {
    let cfg = load(args)?;
    log::info!("case {:?}, d = {}, {} points, {} layers", cfg.case, cfg.field_dim, cfg.n_points, cfg.layers);
    let start = Instant::now();
    let rows = runner::run_scenario(&cfg)?;
    let files = runner::write_outputs(&rows, &cfg, start.elapsed())?;

    println!("wrote {}", files.csv.display());
    println!("wrote {}", files.summary.display());
    if let Some(path) = &files.oracle {
        println!("wrote {}", path.display());
        let report = runner::compare_with_oracle(&rows, &cfg);
        for e in report.entries.iter().filter(|e| e.flagged) {
            eprintln!(
                "oracle mismatch: {} max error {:.3e} at T = {:.6} (tolerance {:e})",
                e.quantity, e.max_abs_error, e.t_at_max, e.tolerance
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(runner::exit_code(&err) as u8)
        }
    }
}
