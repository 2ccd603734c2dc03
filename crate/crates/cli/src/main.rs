//! `jostlab`: scattering tables, resonance checks, evolution snapshots and
//! decay-rate verdicts from a JSON run config.
//!
//! Exit codes: 0 success, 1 usage, 2 numerical failure or a FAIL verdict,
//! 3 inputs outside the hypotheses of the requested statement.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "jostlab", version, about = "Dispersive decay experiments for 1D Schrödinger operators")]
struct Cli {
    /// Run config (JSON). Defaults apply to missing keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory; overrides `output_dir` from the config.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Truncation of the spectral λ integral.
    #[arg(long, global = true)]
    lambda_max: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Transmission and reflection coefficients on the λ grid.
    Scatter,
    /// Zero-energy classification, or a scan of W(0) against well depth.
    Resonance {
        #[arg(long)]
        depth_scan: bool,
    },
    /// e^{itH}P_ac ψ at one time.
    Evolve {
        #[arg(long, allow_negative_numbers = true)]
        t: Option<f64>,
        /// Also run the finite-difference oracle and report the sup difference.
        #[arg(long)]
        oracle: bool,
    },
    /// Fit the weighted decay rate and compare with the predicted exponent.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
    },
    /// Log-log slopes, either of an existing decay CSV or computed from the
    /// config for weights σ = 0, -1, -2.
    DecayFit { input: Option<PathBuf> },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(jostlab_core::Error),
    Io(String),
    /// The run finished but the verdict was FAIL.
    Failed(String),
}

impl From<jostlab_core::Error> for CliError {
    fn from(e: jostlab_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(e) if e.is_usage() => 1,
            CliError::Core(e) if e.is_hypothesis() => 3,
            CliError::Core(_) | CliError::Io(_) | CliError::Failed(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Failed(m) => write!(f, "FAIL: {m}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("jostlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => config::RunConfig::load(path)?,
        None => config::RunConfig::default(),
    };
    if let Some(out) = cli.out {
        cfg.output_dir = out;
    }
    if cli.lambda_max.is_some() {
        cfg.lambda_max = cli.lambda_max;
        cfg.validate()?;
    }
    let ctx = commands::Context::new(cfg)?;
    match cli.command {
        Command::Scatter => ctx.scatter(),
        Command::Resonance { depth_scan: false } => ctx.resonance(),
        Command::Resonance { depth_scan: true } => ctx.depth_scan(),
        Command::Evolve { t, oracle } => ctx.evolve(t, oracle),
        Command::Verify { theorem } => ctx.verify(theorem),
        Command::DecayFit { input: Some(path) } => ctx.fit_csv(&path),
        Command::DecayFit { input: None } => ctx.fit_from_config(),
    }
}
