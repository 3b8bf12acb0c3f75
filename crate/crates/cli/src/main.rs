#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Closed-form open-system dynamics: sweeps, phase-space grids, currents and oracle checks.
#[derive(Parser)]
#[command(name = "multibath", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Reserved. Nothing here draws random numbers, so the flag is rejected.
    #[arg(long, global = true)]
    seedless: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Mode occupation, energy and ladder coefficients over time.
    Sweep,
    /// Quasi-probability distribution of an initially coherent mode on a grid.
    PhaseGrid,
    /// Excitation current and per-reservoir flows.
    Current {
        /// Print the long-time current and occupation as JSON instead.
        #[arg(long)]
        stationary: bool,
    },
    /// Two-level system density matrix, trace distance and its rate.
    Tls,
    /// Charging and discharging energies of a Fock-state battery.
    Battery,
    /// Closed forms against the brute-force oracle. Exits non-zero on any failure.
    Verify,
}

fn required(config: &Option<PathBuf>) -> Result<&Path> {
    config.as_deref().context("--config <path> is required for this command")
}

fn run(cli: Cli) -> Result<bool> {
    if cli.seedless {
        bail!("--seedless is reserved and not accepted: every command is already deterministic");
    }
    std::fs::create_dir_all(&cli.out).with_context(|| format!("creating {}", cli.out.display()))?;
    let out = cli.out.as_path();
    match cli.command {
        Command::Sweep => commands::sweep::run(required(&cli.config)?, out)?,
        Command::PhaseGrid => commands::phase_grid::run(required(&cli.config)?, out)?,
        Command::Current { stationary: true } => println!("{}", commands::current::stationary(required(&cli.config)?)?),
        Command::Current { stationary: false } => commands::current::run(required(&cli.config)?, out)?,
        Command::Tls => commands::tls::run(required(&cli.config)?, out)?,
        Command::Battery => commands::battery::run(required(&cli.config)?, out)?,
        Command::Verify => {
            let (summary, all_passed) = commands::verify::run(cli.config.as_deref(), out)?;
            print!("{summary}");
            return Ok(all_passed);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
