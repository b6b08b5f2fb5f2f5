//! `labpart` command line: build a space from a JSON configuration and
//! query it.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on configuration or
//! input errors.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use commands::{CheckOptions, ExportWhat, Suite, TreeTermArg};

#[derive(Parser)]
#[command(name = "labpart", version, about = "Spaces with labelled partitions: distances, growth profiles and invariant checks")]
struct Cli {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energy and distance between two points (group elements act on the basepoint).
    Dist { config: PathBuf, x: String, y: String },
    /// Pairwise distance table over the points, or over the orbit of a ball.
    Table {
        config: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Growth profile of the orbit of the basepoint over word spheres, as CSV.
    Growth {
        config: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Maximum number of ball elements before the profile is cut short.
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
    },
    /// Invariant suites with a JSON report.
    Check {
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Ball radius for closed-form sweeps.
        #[arg(long)]
        radius: Option<usize>,
        /// Tree term of the amalgam formula.
        #[arg(long, value_enum, default_value_t = TreeTermArg::D)]
        tree_term: TreeTermArg,
    },
    /// Labels with weights, or separation vectors against the basepoint, as JSON.
    Export {
        config: PathBuf,
        #[arg(long, value_enum)]
        what: ExportWhat,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// `Ok(false)` when a check ran and failed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Dist { config, x, y } => {
            let built = config::load(&config)?;
            print!("{}", commands::dist(&built, &x, &y)?);
        }
        Command::Table { config, radius, out } => {
            let built = config::load(&config)?;
            commands::write_output(out.as_deref(), &commands::table(&built, radius)?)?;
        }
        Command::Growth { config, radius, out, budget } => {
            let built = config::load(&config)?;
            let (csv, partial) = commands::growth(&built, radius, budget)?;
            if partial {
                eprintln!("warning: enumeration budget of {budget} elements reached; profile is partial");
            }
            commands::write_output(out.as_deref(), &csv)?;
        }
        Command::Check { config, suite, samples, out, radius, tree_term } => {
            let built = config::load(&config)?;
            let opts = CheckOptions { suite, samples, seed: cli.seed, radius, tree_term };
            let (report, passed) = commands::check(&built, &opts)?;
            commands::write_output(out.as_deref(), &report)?;
            if !passed {
                eprintln!("checks failed");
            }
            return Ok(passed);
        }
        Command::Export { config, what, radius, out } => {
            let built = config::load(&config)?;
            commands::write_output(out.as_deref(), &commands::export(&built, what, radius)?)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
