//! Experiment runner: simulate grid-based local search on exact statevectors
//! and compute classical landscape diagnostics, from a single TOML config.

mod commands;
mod config;

use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand};

use config::ExperimentConfig;

#[derive(Parser)]
#[command(
    name = "qaoa-landscape",
    version,
    about = "Deep-circuit local-search simulator and landscape diagnostics"
)]
struct Cli {
    /// Experiment configuration file (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for run artifacts.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Override the objective instance seed from the config.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for internal parallelism (results are identical for
    /// any thread count).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the local search and record per-round telemetry.
    Run {
        /// Also dump the final statevector (index, real, imag).
        #[arg(long)]
        dump_state: bool,
    },
    /// Enumerate or sample the (f, mu) diagram and its statistics.
    Landscape,
    /// Check the severing conditions (distinct values and differences).
    Severing,
    /// Start next to the most trap-like string with a tiny step size and
    /// record the (non-)progress.
    TrapDemo {
        #[arg(long)]
        dump_state: bool,
    },
    /// Run the same instance at several step sizes and compare.
    Sweep,
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();

    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring thread pool")?;
    }

    let config_path = cli
        .config
        .as_ref()
        .context("--config is required (path to a TOML experiment file)")?;
    let text = std::fs::read_to_string(config_path)
        .with_context(|| format!("reading {}", config_path.display()))?;
    let mut cfg = ExperimentConfig::from_toml(&text)
        .with_context(|| format!("parsing {}", config_path.display()))?;
    if let Some(seed) = cli.seed {
        cfg.objective.set_seed(seed);
    }

    match cli.command {
        Command::Run { dump_state } => commands::cmd_run(&cfg, &cli.out, dump_state),
        Command::Landscape => commands::cmd_landscape(&cfg, &cli.out),
        Command::Severing => commands::cmd_severing(&cfg, &cli.out),
        Command::TrapDemo { dump_state } => commands::cmd_trap_demo(&cfg, &cli.out, dump_state),
        Command::Sweep => commands::cmd_sweep(&cfg, &cli.out),
    }
}
