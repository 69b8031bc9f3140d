use std::path::PathBuf;
use std::process::ExitCode;

use ckg::checks::{seed_check, DEFAULT_SAMPLES, DEFAULT_SEED};
use ckg::{preset_scenarios, run_scenario, scenario_from_file, CliError, Result};
use clap::Parser;

/// Energy spectra between two planar bodies.
#[derive(Debug, Parser)]
#[command(name = "ckg", version)]
struct Args {
    /// Scenario file (TOML).
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,

    /// Built-in scenario: fig1_sliding or fig2_hot_cold.
    #[arg(long)]
    preset: Option<String>,

    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,

    /// Subtract the free-space spectrum at the environment temperature.
    #[arg(long)]
    subtract_vacuum: bool,

    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,

    /// Run the seeded invariant suite before anything else.
    #[arg(long)]
    seed_check: bool,
}

fn run(args: Args) -> Result<()> {
    if args.seed_check {
        let outcomes = seed_check(DEFAULT_SEED, DEFAULT_SAMPLES).map_err(|e| CliError::CheckFailed(e.to_string()))?;
        for o in &outcomes {
            println!("{o}");
        }
        if let Some(bad) = outcomes.iter().find(|o| !o.passed()) {
            return Err(CliError::CheckFailed(bad.name.clone()));
        }
    }
    let scenarios = match (&args.config, &args.preset) {
        (Some(path), None) => vec![scenario_from_file(path, args.subtract_vacuum)?],
        (None, Some(name)) => preset_scenarios(name, args.subtract_vacuum)?,
        (None, None) if args.seed_check => return Ok(()),
        _ => return Err(CliError::config("<arguments>", "give --config or --preset")),
    };
    let threads = args
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    for scenario in &scenarios {
        let out = run_scenario(scenario, &args.out, threads)?;
        println!("{} ({} points) -> {}", scenario.name, out.rows.len(), out.csv.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
