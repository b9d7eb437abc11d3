//! Command-line front end.
//!
//! The binary stays thin: argument parsing lives here, every computation in
//! the library modules, and the subcommand implementations in
//! [`commands`]. All tabular output flows through [`output::Dataset`] so CSV
//! files are deterministic byte-for-byte across runs and worker counts.

mod commands;
mod config;
mod figures;
mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::compensation::CompensationStrategy;
use crate::error::Result;

pub use commands::{EvalSettings, DEFAULT_SAMPLES, DEFAULT_SEED};
pub use config::{
    MethodSpec, ScenarioConfig, SnrSpec, SnrUnit, Spacing, SweepSpec, SweepVariable, SCHEMA_VERSION,
};
pub use figures::{dataset as figure_dataset, FIGURE_IDS};
pub use output::{format_float, Dataset, Field};

/// Effective capacity of delay-constrained short-packet links, with
/// interference-compensation planning.
#[derive(Debug, Parser)]
#[command(name = "effcap", version, about)]
pub struct Cli {
    /// Worker threads for parallel evaluation (default: one per core)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Effective capacity at one operating point
    Ec {
        /// Scenario config (JSON)
        #[arg(long)]
        config: PathBuf,
        /// CSV output path (overrides the config's output_path)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Evaluation route: series:M, direct, or mc
        #[arg(long)]
        method: Option<String>,
        /// Sample count for the mc route
        #[arg(long)]
        samples: Option<u64>,
        /// RNG seed for the mc route
        #[arg(long)]
        seed: Option<u64>,
    },
    /// EC-maximizing error probability for one scenario
    EpsilonOpt {
        /// Scenario config (JSON)
        #[arg(long)]
        config: PathBuf,
        /// CSV output path (overrides the config's output_path)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Evaluation route: series:M or direct
        #[arg(long)]
        method: Option<String>,
    },
    /// Evaluate a scenario across the config's sweep axis
    Sweep {
        /// Scenario config (JSON) with a sweep section
        #[arg(long)]
        config: PathBuf,
        /// CSV output path (required here or as the config's output_path)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Evaluation route: series:M, direct, or mc
        #[arg(long)]
        method: Option<String>,
        /// Sample count for the mc route
        #[arg(long)]
        samples: Option<u64>,
        /// RNG seed for the mc route
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Plan interference compensation for a collided scenario
    Compensate {
        /// Strategy to plan
        #[arg(value_enum)]
        strategy: StrategyArg,
        /// Scenario config (JSON); joint needs a priorities section
        #[arg(long)]
        config: PathBuf,
        /// CSV output path (overrides the config's output_path)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write one of the named reference datasets
    Figure {
        /// Dataset id: fig2, fig3, fig4, fig5, or fig6
        id: String,
        /// CSV output path
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-check the quadrature routes against Monte Carlo sampling
    McValidate {
        /// Scenario config (JSON)
        #[arg(long)]
        config: PathBuf,
        /// CSV output path (overrides the config's output_path)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Sample count (default 1000000)
        #[arg(long)]
        samples: Option<u64>,
        /// RNG seed (default 42)
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    /// Full power control: boost the recovering node to ρ_c
    Power,
    /// Pure delay relaxation: keep power, relax θ to θᵢ
    Graceful,
    /// Optimized mix of partial power control and delay relaxation
    Joint,
}

impl From<StrategyArg> for CompensationStrategy {
    fn from(arg: StrategyArg) -> Self {
        match arg {
            StrategyArg::Power => CompensationStrategy::PowerControl,
            StrategyArg::Graceful => CompensationStrategy::GracefulTheta,
            StrategyArg::Joint => CompensationStrategy::Joint,
        }
    }
}

fn parse_method(flag: Option<String>) -> Result<Option<MethodSpec>> {
    flag.as_deref().map(str::parse).transpose()
}

/// Runs a parsed command line to completion.
pub fn run(cli: Cli) -> Result<()> {
    if let Some(jobs) = cli.jobs {
        if jobs > 0 {
            // Ignore the error: the global pool can only be set once per
            // process, and a second initialization keeps the first pool.
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build_global();
        }
    }
    match cli.command {
        Command::Ec {
            config,
            out,
            method,
            samples,
            seed,
        } => commands::run_ec(&config, out, parse_method(method)?, samples, seed),
        Command::EpsilonOpt {
            config,
            out,
            method,
        } => commands::run_epsilon_opt(&config, out, parse_method(method)?),
        Command::Sweep {
            config,
            out,
            method,
            samples,
            seed,
        } => commands::run_sweep(&config, out, parse_method(method)?, samples, seed),
        Command::Compensate {
            strategy,
            config,
            out,
        } => commands::run_compensate(strategy.into(), &config, out),
        Command::Figure { id, out } => commands::run_figure(&id, &out),
        Command::McValidate {
            config,
            out,
            samples,
            seed,
        } => commands::run_mc_validate(&config, out, samples, seed),
    }
}
