//! `ggd`: command-line front end for the generalized Golomb-Dickman constant.

mod commands;
mod output;
mod theta;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::OutputFormat;
use theta::{ThetaArg, ThetaList};

pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(name = "ggd", version, about = "Generalized Golomb-Dickman constant under Ewens sampling")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct SimArgs {
    /// Master seed (64-bit); falls back to $EWENS_SEED, then 0.
    #[arg(long, env = "EWENS_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Worker threads; 0 uses every available core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Small,
    Large,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Hoppe,
    Crp,
    Spaghetti,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureArg {
    /// λ_θ on a 501-point grid over [0, 5].
    Ggd,
    /// Colour proportions after each draw of one Hoppe urn run.
    Singlerun,
    /// Monte Carlo estimates against the exact and asymptotic curves.
    Mc,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate λ_θ by quadrature.
    Lambda {
        /// Comma-separated θ values (decimals or p/q).
        #[arg(long)]
        theta: ThetaList,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Reproduce the 16-row table of λ_θ rounded to 6 decimals.
    Table,
    /// k-th moment of the largest Poisson-Dirichlet component.
    Moment {
        #[arg(long)]
        theta: ThetaArg,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Small- or large-θ expansion of λ_θ.
    Asym {
        #[arg(long)]
        theta: ThetaList,
        #[arg(long, value_enum)]
        regime: RegimeArg,
    },
    /// θ at which λ_θ equals the target.
    Crossover {
        #[arg(long, default_value_t = 0.5)]
        target: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Exact E[L_n]/n by enumeration of cycle types (n <= 30).
    Exact {
        #[arg(long)]
        theta: ThetaList,
        #[arg(long)]
        n: usize,
    },
    /// Monte Carlo estimate of E[L_n]/n.
    Simulate {
        #[arg(long, value_enum, default_value_t = ModelArg::Hoppe)]
        model: ModelArg,
        /// Defaults to 1, or 1/2 for spaghetti.
        #[arg(long)]
        theta: Option<ThetaArg>,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        reps: u64,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Empirical CDF of s·L(μ) in the tilted Poisson model against exp(-θE₁(x)).
    VerifyLemma {
        #[arg(long, default_value = "1")]
        theta: ThetaArg,
        #[arg(long, default_value_t = 1e-3)]
        s: f64,
        #[arg(long, default_value_t = 100_000)]
        reps: u64,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Write the data behind a figure as CSV.
    Figdata {
        #[arg(value_enum)]
        which: FigureArg,
        /// Destination file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// θ values (mc: the grid; singlerun: the single θ).
        #[arg(long)]
        theta: Option<ThetaList>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        reps: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        sim: SimArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
