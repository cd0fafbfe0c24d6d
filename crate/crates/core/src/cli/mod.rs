//! Command-line front end: `kinematics`, `spectrum`, `figure` and `validate`.
//!
//! Exit codes: 0 on success, 1 when `validate` finds a failing criterion,
//! 2 for configuration, precondition or I/O errors. `DOPPLER_WORKERS` sets the
//! size of the worker pool that evaluates k-grid chunks.

pub mod config;
pub mod figures;
pub mod table;
pub mod validate;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::oscillatory::quadrature::DEFAULT_OVERSAMPLE;
use crate::oscillatory::{Method, QuadratureOptions};
use config::ScenarioConfig;
use figures::FigureName;
use validate::Injection;

pub const WORKERS_ENV: &str = "DOPPLER_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "doppler", version, about = "Doppler spectra of non-inertial receivers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Quadrature nodes per fastest phase oscillation, in units of the guard.
    #[arg(long, default_value_t = DEFAULT_OVERSAMPLE)]
    pub oversample: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Worldline four-vectors along the window.
    Kinematics {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Spectrum table for one scenario.
    Spectrum {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated subset of quadrature, spa, airy; overrides the config.
        #[arg(long, value_delimiter = ',', value_parser = parse_method)]
        methods: Option<Vec<Method>>,
        #[command(flatten)]
        common: Common,
    },
    /// Figure reproduction as a bundle of CSV files.
    Figure {
        #[arg(value_parser = parse_figure)]
        name: FigureName,
        /// Output directory; the current directory when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_OVERSAMPLE)]
        oversample: f64,
    },
    /// Invariant and acceptance suite with a JSON report.
    Validate {
        /// Comma-separated criterion ids; all when absent.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Perturb one criterion to show the suite fails.
        #[arg(long, value_parser = parse_injection)]
        inject: Option<Injection>,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_figure(s: &str) -> std::result::Result<FigureName, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_injection(s: &str) -> std::result::Result<Injection, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Worker count from `DOPPLER_WORKERS`; `None` leaves the pool default.
pub fn workers_from_env() -> Result<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::config(
                WORKERS_ENV,
                format!("need a positive integer, got `{v}`"),
            )),
        },
    }
}

fn load(path: &Path) -> Result<config::Scenario> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    ScenarioConfig::from_json(&text)?.resolve()
}

fn check_oversample(oversample: f64) -> Result<()> {
    if oversample.is_finite() && oversample >= 1.0 {
        Ok(())
    } else {
        Err(Error::config(
            "oversample",
            format!("need a finite value >= 1, got {oversample}"),
        ))
    }
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string())),
    }
}

/// Runs a parsed command, writing results to `stdout` unless `--out` is
/// given. Returns the process exit code.
pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Kinematics { config, common } => {
            let csv = table::cmd_kinematics(&load(&config)?)?;
            emit(common.out.as_deref(), &csv, stdout)?;
            Ok(0)
        }
        Command::Spectrum {
            config,
            methods,
            common,
        } => {
            check_oversample(common.oversample)?;
            let t = table::cmd_spectrum(&load(&config)?, methods.as_deref(), common.oversample)?;
            emit(common.out.as_deref(), &t.to_csv()?, stdout)?;
            Ok(0)
        }
        Command::Figure { name, out, oversample } => {
            check_oversample(oversample)?;
            let bundle = figures::figure(name, &QuadratureOptions::with_oversample(oversample))?;
            let dir = out.unwrap_or_else(|| PathBuf::from("."));
            fs::create_dir_all(&dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
            for (file, csv) in &bundle.files {
                let path = dir.join(file);
                fs::write(&path, csv).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                writeln!(stdout, "wrote {}", path.display()).map_err(|e| Error::Io(e.to_string()))?;
            }
            for c in &bundle.checks {
                let rel = if c.below { "<=" } else { ">=" };
                let verdict = if c.pass { "ok" } else { "FAILED" };
                writeln!(
                    stdout,
                    "{name} {}: {} {rel} {} {verdict}",
                    c.name, c.measured, c.threshold
                )
                .map_err(|e| Error::Io(e.to_string()))?;
            }
            Ok(0)
        }
        Command::Validate { only, inject, common } => {
            check_oversample(common.oversample)?;
            let report =
                validate::run_validation(&only, inject, &QuadratureOptions::with_oversample(common.oversample))?;
            let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            emit(common.out.as_deref(), &json, stdout)?;
            Ok(if report.pass { 0 } else { 1 })
        }
    }
}

/// Parses `args`, sizes the worker pool and runs the command. Errors go to
/// standard error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let run = || -> Result<i32> {
        if let Some(n) = workers_from_env()? {
            // only the first call in a process can size the global pool
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        execute(cli, &mut std::io::stdout().lock())
    };
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
