use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use fracsrc::cli::{report, resolve, ConfigPatch, SeedSpec};
use fracsrc::Error;

#[derive(Parser, Debug)]
#[command(
    name = "fracsrc",
    version,
    about = "Regularized source recovery for a time-fractional transport equation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a noise sweep and write errors.csv, summary.csv and signals_*.csv
    Run(RunArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Start from experiment preset 1 (square wave) or 2 (exponential)
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), conflicts_with = "config")]
    example: Option<u8>,
    /// TOML config file; flags override its values
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    x0: Option<f64>,
    /// Samples per window (power of two)
    #[arg(long)]
    n: Option<usize>,
    /// Window length T
    #[arg(long)]
    t_max: Option<f64>,
    /// Zero-padding factor (power of two)
    #[arg(long)]
    pad: Option<usize>,
    /// Frequency labels of DFT bins: angular (2πk/T) or cycles (k/T)
    #[arg(long)]
    freq_unit: Option<String>,
    /// Assumed smoothness order of the source
    #[arg(long)]
    p: Option<f64>,
    /// Comma-separated subset of r1,r2,r3,naive
    #[arg(long, value_delimiter = ',')]
    filters: Option<Vec<String>>,
    /// Comma-separated noise deviations
    #[arg(long, value_delimiter = ',')]
    eps: Option<Vec<f64>>,
    /// Seed count (e.g. 20) or comma-separated list (e.g. 3,7,11)
    #[arg(long, value_name = "COUNT|LIST")]
    seeds: Option<String>,
    #[arg(long)]
    master_seed: Option<u64>,
    /// Output directory
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Evaluate the a priori error bound for filtered rows
    #[arg(long)]
    theory_bound: Option<bool>,
    /// Skip the per-cell signals_*.csv files
    #[arg(long)]
    no_signals: bool,
}

impl RunArgs {
    fn patch(&self) -> Result<ConfigPatch, Error> {
        Ok(ConfigPatch {
            example: self.example,
            alpha: self.alpha,
            omega: self.omega,
            beta: self.beta,
            nu: self.nu,
            x0: self.x0,
            n: self.n,
            t_max: self.t_max,
            pad: self.pad,
            freq_unit: self.freq_unit.clone(),
            p: self.p,
            source: None,
            samples: None,
            eps: self.eps.clone(),
            seeds: self.seeds.as_deref().map(SeedSpec::parse).transpose()?,
            master_seed: self.master_seed,
            filters: self.filters.clone(),
            out: self.out.clone(),
            theory_bound: self.theory_bound,
            signals: self.no_signals.then_some(false),
        })
    }
}

fn run(args: &RunArgs) -> Result<(), Error> {
    let text = match &args.config {
        Some(path) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?,
        ),
        None => None,
    };
    let file = args.config.as_deref().zip(text.as_deref());
    let mut cfg = resolve(file, args.patch()?)?;
    if cfg.out_dir.is_none() {
        cfg.out_dir = Some(PathBuf::from("."));
    }
    let rep = report::run_experiment(&cfg)?;
    print!("{}", report::summary_csv(&rep));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
