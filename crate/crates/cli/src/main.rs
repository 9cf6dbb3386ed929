mod commands;
mod config;
mod error;
mod output;
mod presets;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use uavcovert_core::GridSpec;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{emit, Format};
use crate::presets::Figure;

/// Covert UAV placement and power planner.
#[derive(Debug, Parser)]
#[command(name = "uavcovert", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// JSON run configuration.
    #[arg(long, value_name = "PATH", conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in configuration (a figure name).
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
}

#[derive(Debug, Args)]
struct Output {
    /// Write to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy)]
struct GridArg(GridSpec);

impl FromStr for GridArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected NxM, got `{s}`"))?;
        let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("`{v}`: {e}"));
        GridSpec::new(parse(a)?, parse(b)?).map(GridArg).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal placement and power for one configuration.
    Solve {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
        /// Compare against the brute-force grid and fail if it does better.
        #[arg(long)]
        verify: bool,
        /// Oracle grid for --verify, range x angle points.
        #[arg(long, default_value = "512x512", value_name = "NxM")]
        grid: GridArg,
    },
    /// Report which of the six range/angle scenarios a box falls in.
    Classify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Solve at every point of the configuration's sweep.
    Sweep {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Regenerate the data behind a figure.
    Figure {
        #[arg(value_enum)]
        name: Figure,
        #[command(flatten)]
        out: Output,
    },
    /// Check the KL lower bound on the warden's detection error against
    /// the exact optimal detector and a Monte Carlo simulation.
    ValidateBound {
        #[command(flatten)]
        out: Output,
        /// Monte Carlo trials per lattice point (0 disables simulation).
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Lattice points per axis.
        #[arg(long, default_value_t = 20)]
        lattice: usize,
    },
    /// Brute-force grid search, compared with the planner.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
        #[arg(long, default_value = "512x512", value_name = "NxM")]
        grid: GridArg,
    },
}

fn load(input: &Input) -> Result<RunConfig, CliError> {
    match (&input.config, &input.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::config("--config", format!("{}: {e}", path.display())))?;
            RunConfig::from_json(&text)
        }
        (None, Some(name)) => presets::by_name(name),
        (None, None) => Err(CliError::config("--config", "one of --config or --preset is required")),
    }
}

/// Command-line flags win over the config's `output` section.
fn destination(out: &Output, config: Option<&RunConfig>, default: Format) -> (Option<PathBuf>, Format) {
    let section = config.and_then(|c| c.output.as_ref());
    let path = out.output.clone().or_else(|| section.and_then(|s| s.path.clone()).map(PathBuf::from));
    let format = out.format.or_else(|| section.and_then(|s| s.format)).unwrap_or(default);
    (path, format)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { input, out, verify, grid } => {
            let config = load(&input)?;
            let (path, format) = destination(&out, Some(&config), Format::Text);
            if verify {
                let v = commands::verify(&config, grid.0)?;
                emit(path.as_deref(), &commands::verification_table(&config, &v).render(format)?)?;
                if v.deviation < -commands::VERIFY_TOL {
                    return Err(CliError::Validation(format!(
                        "grid oracle beats the planner by {:.3e} relative",
                        -v.deviation
                    )));
                }
            } else {
                let s = commands::solve(&config)?;
                emit(path.as_deref(), &commands::solution_table(&config, &s).render(format)?)?;
            }
        }
        Command::Classify { input, out } => {
            let config = load(&input)?;
            let (path, format) = destination(&out, Some(&config), Format::Text);
            emit(path.as_deref(), &commands::classify(&config)?.render(format)?)?;
        }
        Command::Sweep { input, out } => {
            let config = load(&input)?;
            let (path, format) = destination(&out, Some(&config), Format::Csv);
            emit(path.as_deref(), &commands::sweep(&config)?.render(format)?)?;
        }
        Command::Figure { name, out } => {
            let (path, format) = destination(&out, None, Format::Csv);
            emit(path.as_deref(), &commands::figure(name)?.render(format)?)?;
        }
        Command::ValidateBound { out, trials, seed, lattice } => {
            if lattice < 2 {
                return Err(CliError::config("--lattice", "need at least 2 points per axis"));
            }
            let (path, format) = destination(&out, None, Format::Csv);
            let report = commands::validate_bound(lattice, trials, seed)?;
            emit(path.as_deref(), &report.table.render(format)?)?;
            if report.min_slack < commands::BOUND_SLACK_TOL {
                return Err(CliError::Validation(format!("bound violated, minimum slack {:e}", report.min_slack)));
            }
        }
        Command::Oracle { input, out, grid } => {
            let config = load(&input)?;
            let (path, format) = destination(&out, Some(&config), Format::Text);
            let v = commands::verify(&config, grid.0)?;
            emit(path.as_deref(), &commands::verification_table(&config, &v).render(format)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
