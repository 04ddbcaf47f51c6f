//! Batch front end: one subcommand per experiment, each writing a CSV or
//! JSON table and a final `PASS`/`FAIL` summary line on stdout.
//!
//! Exit codes: 0 pass, 1 numerical failure, 2 usage or configuration error.
//!
//! Parameters come from inline flags or from a JSON object given with
//! `--config`; inline flags win. Config keys are the flag names in
//! snake_case, matched case-insensitively (`L_MAX` is `l_max`).

mod commands;
mod output;

pub use output::{format_float, write_atomic, Cell, Format, Table};

use clap::{Parser, Subcommand};
use serde::{de::DeserializeOwned, Serialize};
use serde_json::{Map, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

/// Environment variable capping the worker-thread count.
pub const THREADS_ENV: &str = "SCHIFFER_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "schiffer-lab",
    version,
    about = "Radial eigenvalue, zero-density and overdetermined boundary experiments"
)]
pub struct Cli {
    /// JSON object with parameter values; inline flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the table here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wronskian, recurrence and orthonormality margins of the special functions.
    SpecfunCheck(commands::SpecfunParams),
    /// Real eigenvalues of the two-way radial problem.
    EigenScan(commands::EigenScanParams),
    /// Sector zero density of the dispersion function.
    Density(commands::DensityParams),
    /// Indicator of `k ↦ y_l(ξ; k)` along one ray.
    Indicator(commands::IndicatorParams),
    /// Radial Neumann eigenfunction of a ball and its overdetermined residual.
    BallCheck(commands::BallCheckParams),
    /// Overdetermined boundary residual of a domain over a frequency range.
    DomainResidual(commands::DomainResidualParams),
    /// Per-ray eigenvalue lists, densities and their cross-ray intersection.
    RayScan(commands::RayScanParams),
    /// Far-field synthesis from harmonic coefficients.
    Farfield(commands::FarfieldParams),
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(crate::Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numeric(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numeric(e) => write!(f, "numerical failure: {e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::OrderTooLarge { .. } | crate::Error::Invalid(_) => {
                CliError::Config(e.to_string())
            }
            e => CliError::Numeric(e),
        }
    }
}

/// What a command produced: the table, whether it passed, and summary fields.
pub struct Report {
    pub table: Table,
    pub pass: bool,
    pub summary: Vec<(&'static str, String)>,
}

struct Settings {
    config: Map<String, Value>,
}

impl Settings {
    fn load(path: Option<&PathBuf>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self { config: Map::new() });
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: malformed JSON: {e}", path.display())))?;
        let Value::Object(obj) = value else {
            return Err(CliError::Config(format!(
                "{}: expected a JSON object",
                path.display()
            )));
        };
        let config = obj
            .into_iter()
            .map(|(k, v)| (k.to_lowercase().replace('-', "_"), v))
            .collect();
        Ok(Self { config })
    }

    fn take(&mut self, key: &str) -> Option<Value> {
        self.config.remove(key)
    }

    /// Overlay explicitly given inline parameters on the config values.
    fn merge<P: Serialize + DeserializeOwned>(self, inline: &P) -> Result<P, CliError> {
        let mut merged = self.config;
        if let Value::Object(given) = serde_json::to_value(inline).expect("parameters serialize") {
            for (k, v) in given {
                if !v.is_null() {
                    merged.insert(k, v);
                }
            }
        }
        serde_json::from_value(Value::Object(merged)).map_err(|e| CliError::Config(e.to_string()))
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| {
        CliError::Config(format!(
            "{THREADS_ENV} must be a positive integer, got {raw:?}"
        ))
    })?;
    // A pool may already exist when called twice in one process.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<bool, CliError> {
    configure_threads()?;
    let mut settings = Settings::load(cli.config.as_ref())?;
    let out = match (cli.out, settings.take("out")) {
        (Some(p), _) => Some(p),
        (None, Some(Value::String(s))) => Some(PathBuf::from(s)),
        (None, None) => None,
        (None, Some(v)) => return Err(CliError::Config(format!("out must be a string, got {v}"))),
    };
    let format = match (cli.format, settings.take("format")) {
        (Some(f), _) => f,
        (None, Some(v)) => {
            serde_json::from_value(v).map_err(|e| CliError::Config(format!("format: {e}")))?
        }
        (None, None) => Format::Csv,
    };
    let (name, report) = match &cli.command {
        Command::SpecfunCheck(p) => (
            "specfun-check",
            commands::specfun_check(settings.merge(p)?)?,
        ),
        Command::EigenScan(p) => ("eigen-scan", commands::eigen_scan(settings.merge(p)?)?),
        Command::Density(p) => ("density", commands::density(settings.merge(p)?)?),
        Command::Indicator(p) => ("indicator", commands::indicator(settings.merge(p)?)?),
        Command::BallCheck(p) => ("ball-check", commands::ball_check(settings.merge(p)?)?),
        Command::DomainResidual(p) => (
            "domain-residual",
            commands::domain_residual(settings.merge(p)?)?,
        ),
        Command::RayScan(p) => ("ray-scan", commands::ray_scan(settings.merge(p)?)?),
        Command::Farfield(p) => ("farfield", commands::farfield(settings.merge(p)?)?),
    };
    let body = report.table.render(format);
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match &out {
        Some(path) => write_atomic(path, &body)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => stdout.write_all(body.as_bytes()).map_err(io)?,
    }
    let mut line = String::from(if report.pass { "PASS" } else { "FAIL" });
    line.push(' ');
    line.push_str(name);
    for (k, v) in &report.summary {
        line.push_str(&format!(" {k}={v}"));
    }
    writeln!(stdout, "{line}").map_err(io)?;
    Ok(report.pass)
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
