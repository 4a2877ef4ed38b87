//! `jayvec` — classify constant-coefficient second-order operators, slice
//! their characteristic quadrics, and build verified plane-wave solutions.
//!
//! Every command reads a JSON job description (stdin by default) and writes
//! a JSON report (stdout by default); human-readable notes go to stderr so
//! the output stays pipeable. `solve` emits a self-contained report that
//! `verify` can re-check from scratch.

mod commands;
mod config;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// CLI failure, split by who is at fault: bad job input (exit 2) versus a
/// mathematical obstruction or a failed check on otherwise valid input
/// (exit 3).
#[derive(Debug)]
pub enum CliError {
    /// Malformed or incomplete job description.
    Config(String),
    /// An error surfaced by the library.
    Math(jayvec::Error),
    /// A residual or round-trip gate failed.
    Check(String),
}

impl From<jayvec::Error> for CliError {
    fn from(e: jayvec::Error) -> Self {
        CliError::Math(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Math(e) => write!(f, "{e}"),
            CliError::Check(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    /// Exit code: 2 for input the caller can fix by editing the job, 3 for
    /// results the mathematics refuses (wrong class, broken invariants,
    /// residuals out of tolerance).
    fn code(&self) -> u8 {
        use jayvec::Error::*;
        match self {
            CliError::Config(_) => 2,
            CliError::Math(
                NonFinite { .. }
                | NotSymmetric { .. }
                | FrameNotOrthonormal { .. }
                | DegeneratePair { .. }
                | InvalidInput(_),
            ) => 2,
            CliError::Math(_) | CliError::Check(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "jayvec",
    version,
    about = "Plane-wave solutions of second-order PDEs via conjugate semi-diameters"
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Parser)]
pub struct GlobalOpts {
    /// Job description JSON; "-" reads stdin.
    #[arg(short, long, default_value = "-", global = true)]
    input: String,
    /// Report destination; "-" writes stdout.
    #[arg(short, long, default_value = "-", global = true)]
    output: String,
    /// Override the command's default tolerance (section classification,
    /// residual gate, or verification agreement, depending on the command).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Override the sample-point seed from the job file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Also write this many geometry or field samples as CSV.
    #[arg(long, default_value_t = 0, global = true)]
    emit_points: usize,
    /// Where --emit-points writes its CSV.
    #[arg(long, default_value = "points.csv", global = true)]
    points_file: PathBuf,
}

#[derive(Subcommand, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Classify the operator matrix as elliptic, hyperbolic, or degenerate.
    Classify,
    /// Restrict the operator to a plane section and classify the conic.
    Section,
    /// Build a plane-wave solution from a section and check its residuals.
    Solve,
    /// Compute conjugate semi-diameters: a section pair, or a full triad.
    Csd,
    /// Re-check a previously emitted solution report from scratch.
    Verify,
    /// Run a built-in tour; reads no input.
    Demo,
}

impl Command {
    fn from_name(name: &str) -> Result<Self, CliError> {
        match name {
            "classify" => Ok(Command::Classify),
            "section" => Ok(Command::Section),
            "solve" => Ok(Command::Solve),
            "csd" => Ok(Command::Csd),
            "verify" => Ok(Command::Verify),
            "demo" => Ok(Command::Demo),
            other => Err(CliError::Config(format!(
                "unknown command {other:?} in job file (expected classify, section, solve, csd, verify, or demo)"
            ))),
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    // `demo` given on the command line is self-contained; everything else
    // starts from the job text (verify consumes a solve report instead of
    // a job description).
    if cli.command == Some(Command::Demo) {
        let report = commands::run_demo()?;
        return config::write_report(&cli.opts.output, &report);
    }

    let text = config::read_to_string(&cli.opts.input)?;
    if cli.command == Some(Command::Verify) {
        let report = commands::run_verify(&text, &cli.opts)?;
        return config::write_report(&cli.opts.output, &report);
    }

    let job = config::parse_job(&text)?;
    let command = match cli.command {
        Some(c) => c,
        None => match &job.command {
            Some(name) => Command::from_name(name)?,
            None => {
                return Err(CliError::Config(
                    "no command given: pass a subcommand or set \"command\" in the job file".into(),
                ))
            }
        },
    };

    let report = match command {
        Command::Classify => commands::run_classify(&job, &cli.opts)?,
        Command::Section => commands::run_section(&job, &cli.opts)?,
        Command::Solve => commands::run_solve(&job, &cli.opts)?,
        Command::Csd => commands::run_csd(&job, &cli.opts)?,
        Command::Verify => commands::run_verify(&text, &cli.opts)?,
        Command::Demo => commands::run_demo()?,
    };
    config::write_report(&cli.opts.output, &report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
