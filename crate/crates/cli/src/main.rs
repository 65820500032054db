//! `ehp`: bound-state energies, reference tables, parameter sweeps, oracle
//! validation and wavefunction dumps for the Eckart-Hellmann potential.
//!
//! Exit codes: 0 success, 1 usage error, 2 no bound state, 3 validation
//! mismatch.

mod commands;
mod config;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Why a run stopped.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    NoBoundState(String),
    Mismatch(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Runtime(_) => 1,
            Failure::NoBoundState(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m)
            | Failure::NoBoundState(m)
            | Failure::Mismatch(m)
            | Failure::Runtime(m) => m,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "ehp",
    version,
    about = "Eckart-Hellmann bound states by the NUFA method, with a finite-difference cross-check"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Energy of one level.
    Energy(EnergyArgs),
    /// Regenerate a reference table as CSV.
    Table(TableArgs),
    /// Energies over a range of one parameter, as CSV.
    Sweep(SweepArgs),
    /// Compare both closed forms with the finite-difference oracle.
    Validate(ValidateArgs),
    /// Normalised radial wavefunction sampled on a grid, as CSV.
    Wavefunction(WavefunctionArgs),
}

#[derive(Args, Debug, Default, Clone)]
pub struct PotentialArgs {
    /// ehp, hellmann, eckart, coulomb or yukawa.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long = "A", allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long = "B", allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long = "C", allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(long = "D", allow_negative_numbers = true)]
    pub d: Option<f64>,
    /// Screening parameter (natural units).
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    Natural,
    Physical,
}

#[derive(Args, Debug, Default, Clone)]
pub struct UnitArgs {
    #[arg(long, value_enum)]
    pub units: Option<Units>,
    #[arg(long)]
    pub hbar: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    /// Molecule from the catalog (physical units: eV, Angstrom).
    #[arg(long)]
    pub molecule: Option<String>,
    /// Reduced mass in amu (physical units).
    #[arg(long = "mu-amu")]
    pub mu_amu: Option<f64>,
    /// Screening parameter in 1/Angstrom (physical units).
    #[arg(long = "alpha-anginv")]
    pub alpha_anginv: Option<f64>,
    /// Molecule catalog file replacing the built-in one.
    #[arg(long)]
    pub catalog: Option<String>,
}

#[derive(Args, Debug, Default, Clone)]
pub struct StateArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
}

#[derive(Args, Debug, Default, Clone)]
pub struct GridArgs {
    /// Interior points of the coarsest oracle grid.
    #[arg(long = "grid-points")]
    pub grid_points: Option<usize>,
    #[arg(long = "r-min")]
    pub r_min: Option<f64>,
    #[arg(long = "r-max")]
    pub r_max: Option<f64>,
}

#[derive(Args, Debug, Default, Clone)]
pub struct IoArgs {
    /// rederived (default) or as-printed.
    #[arg(long)]
    pub variant: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<String>,
    /// `key = value` file; flags take precedence over it.
    #[arg(long)]
    pub config: Option<String>,
}

#[derive(Args, Debug)]
pub struct EnergyArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub units: UnitArgs,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Table1,
    Table3,
    Table4,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub preset: Preset,
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long)]
    pub catalog: Option<String>,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Parameter to vary: A, B, C, D or alpha.
    #[arg(long)]
    pub param: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub from: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub to: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Comma-separated `n:l` pairs or labels such as `2p`.
    #[arg(long)]
    pub states: Option<String>,
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub units: UnitArgs,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Comma-separated `n:l` pairs or labels; defaults to every state with
    /// principal number up to 4.
    #[arg(long)]
    pub states: Option<String>,
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub units: UnitArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Args, Debug)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub units: UnitArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub io: IoArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return ExitCode::from(if informational { 0 } else { 1 });
        }
    };
    let outcome = match cli.command {
        Command::Energy(a) => commands::energy(&a),
        Command::Table(a) => commands::table(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::Validate(a) => commands::validate(&a),
        Command::Wavefunction(a) => commands::wavefunction(&a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ehp: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
