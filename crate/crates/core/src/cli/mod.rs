//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
//! 3 quadrature failure, 4 precision exhausted.

pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;

pub use config::{parse_config_text, DIGITS_ENV};
pub use report::{read_csv_rows, Format, ReportEnvelope, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_QUADRATURE: i32 = 3;
pub const EXIT_PRECISION: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Numeric(Error::Quadrature { .. }) => EXIT_QUADRATURE,
            CliError::Numeric(Error::PrecisionExhausted { .. }) => EXIT_PRECISION,
            CliError::Numeric(Error::IndexOutOfRange { .. } | Error::InvalidArgument(_)) => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "sextic-freud", version, about = "Orthogonal polynomials for the weight exp(-x^6 - t2 x^4 - t1 x^2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moments mu_0 ..= mu_M.
    Moments(MomentsArgs),
    /// Recurrence coefficients, norms and Hankel determinants up to N.
    Recurrence(RecurrenceArgs),
    /// Residuals of the exact identities over 2 ..= N-2.
    Verify(VerifyArgs),
    /// Exact values against the large-n expansions, with fitted decay orders.
    Asympt(AsymptArgs),
    /// One scalar over a (t1, t2) grid.
    Sweep(SweepArgs),
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    #[arg(long, allow_hyphen_values = true, help = "x^2 coefficient, as a decimal string [default: 0]")]
    pub t1: Option<String>,
    #[arg(long, allow_hyphen_values = true, help = "x^4 coefficient, as a decimal string [default: 0]")]
    pub t2: Option<String>,
    /// Target significant digits [env: SEXTIC_FREUD_DIGITS] [default: 50]
    #[arg(long)]
    pub digits: Option<u32>,
    /// Guard digits; automatic when omitted.
    #[arg(long)]
    pub guard: Option<u32>,
    /// Output format [default: csv]
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// key=value file with defaults for any of these options.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Highest moment order [default: 20]
    #[arg(long)]
    pub max_order: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct RecurrenceArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Largest index N [default: 20]
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Table size N [default: 20]
    #[arg(long)]
    pub n: Option<usize>,
    /// dpi, ladder, ode, compat, pform, dt2 or all [default: all]
    #[arg(long)]
    pub check: Option<String>,
    /// Relative tolerance overriding every check's default.
    #[arg(long)]
    pub tol: Option<String>,
    /// Central-difference step in t2 for dt2 [default: 1e-10]
    #[arg(long)]
    pub step: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct AsymptArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// u_quarter, lagrange_A, beta, p, logh or logD [default: beta]
    #[arg(long)]
    pub quantity: Option<String>,
    /// Comma-separated, strictly increasing indices [default: 32,64]
    #[arg(long)]
    pub n_list: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// start:stop:count for t1 (falls back to --t1)
    #[arg(long, allow_hyphen_values = true)]
    pub t1_range: Option<String>,
    /// start:stop:count for t2 (falls back to --t2)
    #[arg(long, allow_hyphen_values = true)]
    pub t2_range: Option<String>,
    /// Index n [default: 10]
    #[arg(long)]
    pub n: Option<usize>,
    /// beta_n, h_n, p_n, r_n, R_n or log_D_n [default: beta_n]
    #[arg(long)]
    pub quantity: Option<String>,
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Moments(a) => &a.common,
            Command::Recurrence(a) => &a.common,
            Command::Verify(a) => &a.common,
            Command::Asympt(a) => &a.common,
            Command::Sweep(a) => &a.common,
        }
    }
}

/// Parses arguments, runs the command and writes the report. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Entry point for the binary.
pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn execute(command: &Command, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let common = command.common();
    let file = match &common.config {
        Some(path) => config::load_config_file(path)?,
        None => Default::default(),
    };
    let mut layers = config::Layers::new(file);
    let format: Format = layers.parsed("format", common.format, Format::Csv)?;
    let output = layers.get("output", common.output.as_ref().map(|p| p.display().to_string()));

    let envelope = match command {
        Command::Moments(a) => commands::moments(a, &mut layers)?,
        Command::Recurrence(a) => commands::recurrence(a, &mut layers)?,
        Command::Verify(a) => commands::verify(a, &mut layers)?,
        Command::Asympt(a) => commands::asympt(a, &mut layers)?,
        Command::Sweep(a) => commands::sweep(a, &mut layers)?,
    };

    let text = envelope.render(format);
    match output {
        Some(path) => std::fs::write(&path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(match envelope.pass() {
        Some(false) => EXIT_VERIFY_FAILED,
        _ => EXIT_OK,
    })
}
