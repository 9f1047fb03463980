use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod failure;
mod parse;
mod suite;
mod svg;

use failure::Failure;

#[derive(Parser, Debug)]
#[command(name = "toric-ech", version, about = "ECH capacities of star-shaped toric domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Curve specification file (JSON).
    #[arg(long, global = true)]
    pub curve: Option<PathBuf>,
    /// Indices as `A..B`, a comma list, or a single number.
    #[arg(long, global = true)]
    pub k: Option<String>,
    /// `convex` or `concave`; inferred from the curve's shape class if omitted.
    #[arg(long, global = true)]
    pub mode: Option<String>,
    /// Sub-arcs as `start:end` pairs separated by commas, e.g. `0:pi/4,pi/4:pi/2`.
    #[arg(long, global = true)]
    pub arcs: Option<String>,
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Decimal digits trusted in floating weights (nice check).
    #[arg(long, global = true, default_value_t = 12)]
    pub precision: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Capacities c_k and their optimal paths.
    Capacities {
        /// Optimal paths listed per index.
        #[arg(long, default_value_t = 20)]
        max_paths: usize,
    },
    /// Spectral measures on sub-arcs and Hausdorff distances to the curve.
    Equidist,
    /// Residuals c_k/√k − √(4·area).
    Weyl,
    /// Randomised isoperimetric trials, or a single pair with --target.
    Isoper {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Largest vertex count of the random polygons.
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        /// Compare --curve (the base) against this curve only.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Rational normal points and a search for rational relations among their weights.
    Nice {
        /// Largest normal coordinate.
        #[arg(long, default_value_t = 6)]
        level: u32,
    },
    /// Built-in verification suite, or --curve checked against --expect.
    Check {
        /// CSV with columns `k,value` of expected capacities.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(jobs) = cli.common.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Failure::config(anyhow::anyhow!("--jobs: {e}")))?;
    }
    let c = &cli.common;
    match cli.command {
        Command::Capacities { max_paths } => commands::capacities(c, max_paths),
        Command::Equidist => commands::equidist(c),
        Command::Weyl => commands::weyl(c),
        Command::Isoper { trials, vertices, target } => commands::isoper(c, trials, vertices, target.as_deref()),
        Command::Nice { level } => commands::nice(c, level),
        Command::Check { expect } => suite::check(c, expect.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
