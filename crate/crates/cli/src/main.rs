//! Command-line front end for the scan-statistics library.
//!
//! Four subcommands cover the workflows end to end:
//!
//! * `scan` — run one scan over a unit-interval sample and print where the
//!   extremum was attained.
//! * `detect` — transform raw data through a null distribution, scan for
//!   clusters and gaps, and report intervals in data coordinates with
//!   p-values.
//! * `calibrate` — convert between significance levels, critical values,
//!   p-values, and the tail coordinate of the limit laws.
//! * `simulate` — replicate a statistic under uniform sampling and summarize
//!   its empirical distribution, optionally against a limit law.
//!
//! Output is one line of JSON per invocation (`--format csv` switches to a
//! flat table). Errors are reported as `{"error": kind, "message": ...}` on
//! stderr with distinct exit codes: 1 for I/O, 2 for parse and usage
//! problems, 3 for domain violations. Every success echoes the fully
//! resolved configuration, so a run can be reproduced from its own output.

mod commands;
mod config;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::FileConfig;

#[derive(Parser)]
#[command(
    name = "scanstat",
    version,
    about = "Scan statistics for interval anomalies: scan, detect, calibrate, simulate"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every random operation (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output format (default json).
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Suppress warnings on stderr.
    #[arg(long, global = true)]
    quiet: bool,

    /// Config file with `key = value` lines supplying flag defaults.
    /// Flags always win over config entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Scan a sorted unit-interval sample for its extremal interval.
    Scan(ScanArgs),
    /// Detect clusters and gaps in raw data under a null distribution.
    Detect(DetectArgs),
    /// Critical values, p-values, and tail coordinates of the limit laws.
    Calibrate(CalibrateArgs),
    /// Replicate a statistic under uniform sampling and summarize it.
    Simulate(SimulateArgs),
}

#[derive(Args)]
pub struct ScanArgs {
    /// Input file with one numeric column (optional header); `-` for stdin.
    pub input: PathBuf,

    /// Scan variant: expected-count or observed-mass normalization.
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,

    /// Which extremum to report.
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,

    /// Smallest interval length (in points) to scan; default 1.
    #[arg(long)]
    pub k: Option<usize>,

    /// Largest interval length to scan; default n-1 (full window).
    #[arg(long)]
    pub l: Option<usize>,
}

#[derive(Args)]
pub struct DetectArgs {
    /// Input file with one numeric column (optional header); `-` for stdin.
    pub input: PathBuf,

    /// Null distribution: `uniform`, `uniform:a,b`, `normal:mean,sd`,
    /// `exponential:rate`, or `quantiles:table.csv`.
    #[arg(long)]
    pub null: Option<String>,
}

#[derive(Args)]
pub struct CalibrateArgs {
    /// Limit law to calibrate against.
    #[arg(long, value_enum)]
    pub law: Option<LawArg>,

    /// Window parameter for the windowed law (`--law swindow`).
    #[arg(long)]
    pub a: Option<f64>,

    /// Sample size the statistic was (or will be) computed from.
    #[arg(long)]
    pub n: Option<usize>,

    /// Significance level; produces the critical value.
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Observed statistic value; produces the p-value.
    #[arg(long)]
    pub observed: Option<f64>,
}

#[derive(Args)]
pub struct SimulateArgs {
    /// Statistic to replicate.
    #[arg(long, value_enum)]
    pub statistic: Option<StatisticArg>,

    /// Scan variant (with `--statistic scan`).
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,

    /// Scan side (with `--statistic scan`).
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,

    /// Smallest scanned interval length (with `--statistic scan`).
    #[arg(long)]
    pub k: Option<usize>,

    /// Largest scanned interval length (with `--statistic scan`).
    #[arg(long)]
    pub l: Option<usize>,

    /// Sample size per replicate.
    #[arg(long)]
    pub n: Option<usize>,

    /// Number of replicates.
    #[arg(long)]
    pub replicates: Option<usize>,

    /// Worker threads; 0 picks the runtime default.
    #[arg(long)]
    pub parallelism: Option<usize>,

    /// Limit law to compare the empirical distribution against.
    #[arg(long, value_enum)]
    pub law: Option<LawArg>,

    /// Window parameter for `--law swindow`.
    #[arg(long)]
    pub a: Option<f64>,

    /// Append the experiment record to this JSON-lines file.
    #[arg(long)]
    pub record: Option<PathBuf>,

    /// Write raw replicate values to this CSV file.
    #[arg(long)]
    pub raw: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Studentized,
    Standardized,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Plus,
    Minus,
    TwoSided,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum LawArg {
    /// Studentized plus scan law.
    Splus,
    /// Studentized minus scan law.
    Sminus,
    /// Standardized full-range plus scan law.
    Sfull,
    /// Standardized length-windowed plus scan law (needs `--a`).
    Swindow,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum StatisticArg {
    Scan,
    Ks,
    MinSpacing,
    EickerSup,
    EickerSupStudentized,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

/// Errors at the CLI boundary, partitioned by exit code.
#[derive(Debug)]
pub enum CliError {
    /// An error surfaced by the library.
    Core(scanstat::Error),
    /// Flags or config entries that do not add up to a runnable command.
    Usage(String),
    /// Input data that could not be parsed.
    Parse(String),
}

impl From<scanstat::Error> for CliError {
    fn from(e: scanstat::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn core_exit_code(e: &scanstat::Error) -> u8 {
        use scanstat::Error;
        match e {
            Error::Io(_) => 1,
            Error::EmptyInput
            | Error::OutOfUnitInterval { .. }
            | Error::NonFiniteValue { .. } => 2,
            Error::ReplicateFailed { source, .. } => Self::core_exit_code(source),
            _ => 3,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => Self::core_exit_code(e),
            CliError::Usage(_) | CliError::Parse(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind_name(),
            CliError::Usage(_) => "UsageError",
            CliError::Parse(_) => "ParseError",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) | CliError::Parse(m) => m.clone(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let body = serde_json::json!({
                "error": e.kind(),
                "message": e.message(),
            });
            eprintln!("{body}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = FileConfig::load(cli.config.as_deref())?;
    let globals = commands::Globals::resolve(cli.seed, cli.format, cli.quiet, &mut cfg)?;
    match cli.command {
        Command::Scan(args) => commands::scan(args, &mut cfg, &globals)?,
        Command::Detect(args) => commands::detect(args, &mut cfg, &globals)?,
        Command::Calibrate(args) => commands::calibrate(args, &mut cfg, &globals)?,
        Command::Simulate(args) => commands::simulate(args, &mut cfg, &globals)?,
    }
    cfg.warn_unrecognized(globals.quiet);
    Ok(())
}
