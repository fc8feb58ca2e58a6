//! Batch driver behind the `vdw` binary.
//!
//! ```text
//! vdw spectrum|enhancement|peaks|validate --config <file> [--points N] [--out <path>]
//! ```
//!
//! Exit codes: 0 ok, 1 config, 2 I/O, 3 quadrature, 4 validation failure.
//! `VDW_LOG` sets the log level.

pub mod config;
pub mod format;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use log::info;
use thiserror::Error;

use crate::greens::nonretarded_limit_check;
use crate::spectra::SpectrumRow;

pub use config::{OutputFormat, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "vdw",
    version,
    about = "Surface-enhanced van der Waals interaction across an interface"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Spectrum,
    Enhancement,
    Peaks,
    Validate,
}

#[derive(Debug, clap::Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Override scan.n_points
    #[arg(long)]
    pub points: Option<usize>,
    /// Override output.path (`-` for stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Resonant potential with and without local-field correction (CSV/JSON)
    Spectrum(CommonArgs),
    /// Enhancement factor g(ω_A) over the scan grid (CSV/JSON)
    Enhancement(CommonArgs),
    /// Refined and classified resonance peaks (JSON)
    Peaks(CommonArgs),
    /// Sommerfeld integral against the closed nonretarded form (CSV)
    Validate(CommonArgs),
}

impl Command {
    fn parts(&self) -> (CommandKind, &CommonArgs) {
        match self {
            Command::Spectrum(a) => (CommandKind::Spectrum, a),
            Command::Enhancement(a) => (CommandKind::Enhancement, a),
            Command::Peaks(a) => (CommandKind::Peaks, a),
            Command::Validate(a) => (CommandKind::Validate, a),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("quadrature failure: {0}")]
    Quadrature(String),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Io(_) => 2,
            CliError::Quadrature(_) => 3,
            CliError::ValidationFailed(_) => 4,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::Quadrature { .. } => CliError::Quadrature(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

fn io_err(path: &Path, e: io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Runs one parsed command line. Returns a one-line summary on success.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let (kind, args) = cli.command.parts();
    let mut cfg = RunConfig::load(&args.config)?;
    if let Some(n) = args.points {
        cfg.scan.n_points = n;
    }
    if let Some(out) = &args.out {
        cfg.output.path = out.clone();
    }
    cfg.check()?;
    run_config(kind, &cfg)
}

/// Runs `kind` against an already loaded configuration.
pub fn run_config(kind: CommandKind, cfg: &RunConfig) -> Result<String, CliError> {
    let mut body = Vec::new();
    let summary = match kind {
        CommandKind::Spectrum => spectrum(cfg, &mut body)?,
        CommandKind::Enhancement => enhancement(cfg, &mut body)?,
        CommandKind::Peaks => peaks(cfg, &mut body)?,
        CommandKind::Validate => {
            let (summary, passed) = validate(cfg, &mut body)?;
            emit(&cfg.output.path, &body)?;
            return if passed {
                Ok(summary)
            } else {
                Err(CliError::ValidationFailed(summary))
            };
        }
    };
    emit(&cfg.output.path, &body)?;
    Ok(summary)
}

fn emit(path: &Path, body: &[u8]) -> Result<(), CliError> {
    if path.as_os_str() == "-" {
        let mut out = io::stdout().lock();
        return out
            .write_all(body)
            .and_then(|_| out.flush())
            .map_err(|e| io_err(path, e));
    }
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut w = BufWriter::new(file);
    w.write_all(body)
        .and_then(|_| w.flush())
        .map_err(|e| io_err(path, e))?;
    info!("wrote {}", path.display());
    Ok(())
}

fn scan_rows(cfg: &RunConfig) -> Result<Vec<SpectrumRow>, CliError> {
    Ok(cfg.spectrum_model()?.scan(&cfg.scan)?)
}

fn spectrum(cfg: &RunConfig, out: &mut Vec<u8>) -> Result<String, CliError> {
    let rows = scan_rows(cfg)?;
    match cfg.output.format {
        OutputFormat::Csv => format::spectrum_csv(&rows, cfg.scan.include_offresonant, out),
        OutputFormat::Json => format::json(&rows, out),
    }
    .map_err(|e| io_err(&cfg.output.path, e))?;
    Ok(format!("spectrum: {} rows", rows.len()))
}

fn enhancement(cfg: &RunConfig, out: &mut Vec<u8>) -> Result<String, CliError> {
    let rows = scan_rows(cfg)?;
    match cfg.output.format {
        OutputFormat::Csv => format::enhancement_csv(&rows, out),
        OutputFormat::Json => format::json(
            &rows
                .iter()
                .map(format::EnhancementRecord::from)
                .collect::<Vec<_>>(),
            out,
        ),
    }
    .map_err(|e| io_err(&cfg.output.path, e))?;
    let best = rows
        .iter()
        .filter(|r| !r.singular)
        .max_by(|a, b| a.g.total_cmp(&b.g));
    Ok(match best {
        Some(r) => format!("enhancement: max g = {} at omega = {}", r.g, r.omega_a),
        None => "enhancement: no regular rows".to_string(),
    })
}

fn peaks(cfg: &RunConfig, out: &mut Vec<u8>) -> Result<String, CliError> {
    let model = cfg.spectrum_model()?;
    let rows = model.scan(&cfg.scan)?;
    let found = model.find_peaks(&rows, cfg.peaks.refine_tol);
    format::json(&found, out).map_err(|e| io_err(&cfg.output.path, e))?;
    Ok(format!("peaks: {} found", found.len()))
}

fn validate(cfg: &RunConfig, out: &mut Vec<u8>) -> Result<(String, bool), CliError> {
    let plan = cfg.validation_plan()?;
    let sys = cfg.system()?;
    let report = nonretarded_limit_check(
        &sys,
        plan.omega,
        &plan.positions,
        &plan.scales,
        &cfg.quadrature,
    )?;
    format::limit_csv(&report, out).map_err(|e| io_err(&cfg.output.path, e))?;
    let dev = report.final_max_deviation().unwrap_or(f64::INFINITY);
    let passed = report.passes(plan.tolerance);
    let verdict = if passed { "PASS" } else { "FAIL" };
    Ok((
        format!(
            "validate: {verdict} (max |ratio - 1| = {dev:.3e} at scale {}, tolerance {})",
            plan.scales.last().copied().unwrap_or(f64::NAN),
            plan.tolerance
        ),
        passed,
    ))
}
