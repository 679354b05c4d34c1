//! Command-line front end for squeezed composite-boson states.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 configuration error,
//! 3 numerical-tolerance failure, 4 resource cap exceeded.

mod commands;
mod oracle_check;
mod output;
mod records;

use std::fmt;
use std::io;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use output::OutputFormat;
use records::StateSelector;

#[derive(Parser)]
#[command(
    name = "coboson",
    version,
    about = "Squeezed states of two-fermion composite bosons: spectra, variance sweeps, figure data, and an exact-oracle cross-check"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// All eigenvalues of the transformed ladder operator at one point
    Spectrum(SpectrumArgs),
    /// Selected-state observables over a squeeze-amplitude grid
    Sweep(SweepArgs),
    /// Observables of a single state at a single point
    Variances(VariancesArgs),
    /// Figure-reproduction CSV files (variances and uncertainty product vs r)
    Figures(FiguresArgs),
    /// Cross-validate the ladder algebra against the exact fermionic oracle
    OracleCheck(OracleCheckArgs),
}

#[derive(Args)]
pub struct SpectrumArgs {
    /// Number of pair states n_s
    #[arg(long = "ns")]
    pub n_s: usize,
    /// Squeeze amplitude (must be positive)
    #[arg(long)]
    pub r: f64,
    /// Squeeze phase
    #[arg(long, default_value_t = 0.0)]
    pub phi: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Eigenpair residual tolerance, relative to the matrix norm
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Pair-state counts, comma separated
    #[arg(long = "ns", value_delimiter = ',', num_args = 1..)]
    pub n_s: Vec<usize>,
    /// Smallest squeeze amplitude (must be positive)
    #[arg(long)]
    pub r_min: f64,
    /// Largest squeeze amplitude
    #[arg(long)]
    pub r_max: f64,
    /// Number of grid points, spaced linearly
    #[arg(long)]
    pub steps: usize,
    /// Squeeze phase
    #[arg(long, default_value_t = 0.0)]
    pub phi: f64,
    /// State to report: an index, "last", or "vacuum"
    #[arg(long, default_value = "last", value_parser = StateSelector::parse)]
    pub state_index: StateSelector,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Eigenpair residual tolerance, relative to the matrix norm
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args)]
pub struct VariancesArgs {
    /// Number of pair states n_s
    #[arg(long = "ns")]
    pub n_s: usize,
    /// Squeeze amplitude (must be positive)
    #[arg(long)]
    pub r: f64,
    /// Squeeze phase
    #[arg(long, default_value_t = 0.0)]
    pub phi: f64,
    /// State to report: an index, "last", or "vacuum"
    #[arg(long, default_value = "last", value_parser = StateSelector::parse)]
    pub state_index: StateSelector,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Eigenpair residual tolerance, relative to the matrix norm
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args)]
pub struct FiguresArgs {
    /// Number of pair states n_s
    #[arg(long = "ns", default_value_t = 20)]
    pub n_s: usize,
    /// Smallest squeeze amplitude (must be positive)
    #[arg(long, default_value_t = 0.1)]
    pub r_min: f64,
    /// Largest squeeze amplitude
    #[arg(long, default_value_t = 4.0)]
    pub r_max: f64,
    /// Number of grid points, spaced linearly
    #[arg(long, default_value_t = 40)]
    pub steps: usize,
    /// Directory receiving fig1.csv, fig2.csv, fig3.csv
    #[arg(long)]
    pub out: PathBuf,
    /// Eigenpair residual tolerance, relative to the matrix norm
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args)]
pub struct OracleCheckArgs {
    /// Largest pair-state count to check (capped at 8)
    #[arg(long = "ns-max", default_value_t = 4)]
    pub n_s_max: usize,
    /// Largest accepted identity deviation
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Seed for the random internal-phase draws
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerics(String),
    ResourceCap(String),
    Io(io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numerics(_) => 3,
            CliError::ResourceCap(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Numerics(msg) => write!(f, "{msg}"),
            CliError::ResourceCap(msg) => write!(f, "{msg}"),
            CliError::Io(err) => write!(f, "{err}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(err: io::Error) -> Self {
        CliError::Io(err)
    }
}

impl From<coboson::Error> for CliError {
    fn from(err: coboson::Error) -> Self {
        match err {
            coboson::Error::ResidualTooLarge { .. } | coboson::Error::EigenConvergence => {
                CliError::Numerics(err.to_string())
            }
            coboson::Error::OracleTooLarge { .. } | coboson::Error::ModeOutOfRange { .. } => {
                CliError::ResourceCap(err.to_string())
            }
            _ => CliError::Config(err.to_string()),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Spectrum(args) => commands::spectrum(args),
        Command::Sweep(args) => commands::sweep(args),
        Command::Variances(args) => commands::variances(args),
        Command::Figures(args) => commands::figures(args),
        Command::OracleCheck(args) => oracle_check::run(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
