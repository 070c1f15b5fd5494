//! `entroplex`: bound calculator and verification sweeps.
//!
//! Exit codes: 0 success, 1 a verification record failed, 2 parse or usage
//! error, 3 an input failed validation.

mod commands;
mod error;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "entroplex",
    version,
    about = "Entropic uncertainty and information exclusion bounds"
)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every bound for a pair of measurements.
    Bounds(BoundsArgs),
    /// Randomized checks of the inequalities.
    Verify(VerifyArgs),
    /// The qutrit example with its numbers and the Haar average of q(psi).
    Example1(Example1Args),
    /// lambda_min of Delta(p) against p for the qutrit example.
    Fig1(Fig1Args),
    /// Gap q' - q_MU of the rotated Fourier construction against dimension.
    Gap(GapArgs),
    /// Capacity witness of a channel next to its coherent information.
    Capacity(CapacityArgs),
}

#[derive(Args)]
pub struct BoundsArgs {
    /// Basis or POVM document, or computational:<d> / fourier:<d>.
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub z: String,
    /// State document; q(rho_A) uses its first subsystem.
    #[arg(long)]
    pub state: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Preset {
    Smoke,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum StateArg {
    Random,
    MaxEntangled,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Suite name or `all`.
    pub suite: String,
    /// Master seed; falls back to ENTROPLEX_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Instances per suite; overrides the preset.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, value_enum, default_value = "full")]
    pub preset: Preset,
    /// Dimension grid such as `2x2,3x3`; single suite only.
    #[arg(long)]
    pub dims: Option<String>,
    /// Allowed negative slack.
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
    /// Bipartite states for the state-based suites.
    #[arg(long, value_enum, default_value = "random")]
    pub state: StateArg,
}

#[derive(Args)]
pub struct Example1Args {
    /// Haar samples for the average of q(psi).
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args)]
pub struct Fig1Args {
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    /// Also write `p,lambda_min` rows here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args)]
pub struct GapArgs {
    /// Comma-separated dimensions, each at least 3.
    #[arg(long, default_value = "8,16,32,64,128")]
    pub dims: String,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
    pub theta: f64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args)]
pub struct CapacityArgs {
    /// Kraus document, or identity:<d> / depolarizing:<d> / dephasing:<d>.
    #[arg(long)]
    pub channel: String,
    /// Input basis X.
    #[arg(long)]
    pub x: String,
    /// Output basis measured after sending X.
    #[arg(long)]
    pub xb: String,
    #[arg(long)]
    pub z: String,
    #[arg(long)]
    pub zb: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap uses 2 for usage errors and 0 for --help/--version.
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let exec = if cli.sequential {
        entroplex::Execution::Sequential
    } else {
        entroplex::Execution::Parallel
    };
    let out = cli.output.as_deref();
    let result: Result<bool, CliError> = match &cli.command {
        Command::Bounds(a) => commands::bounds(a, exec, out),
        Command::Verify(a) => commands::verify(a, exec, out),
        Command::Example1(a) => commands::example1(a, exec, out),
        Command::Fig1(a) => commands::fig1(a, exec, out),
        Command::Gap(a) => commands::gap(a, exec, out),
        Command::Capacity(a) => commands::capacity(a, out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
