//! Command-line front end: argument handling, output documents, SVG charts.

pub mod args;
pub mod commands;
pub mod report;
pub mod svg;

use std::io::Write;
use std::path::{Path, PathBuf};

use args::{Command, ConfigError, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Solver(pipestab::Error),
    Degenerate(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use pipestab::Error as E;
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Solver(E::InvalidParameter(_) | E::Range(_) | E::InconsistentSigns(_)) => EXIT_CONFIG,
            CliError::Solver(_) => EXIT_SOLVER,
            CliError::Degenerate(_) => EXIT_DEGENERATE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid configuration: {m}"),
            CliError::Solver(e) => write!(f, "solver failure: {e}"),
            CliError::Degenerate(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.0)
    }
}

impl From<pipestab::Error> for CliError {
    fn from(e: pipestab::Error) -> Self {
        CliError::Solver(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// `out` with its extension replaced by `{suffix}.svg`.
pub fn chart_path(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}{suffix}.svg"))
}

/// Runs a parsed command, writes its outputs, and returns the exit code.
pub fn run(command: &Command) -> Result<i32, CliError> {
    let (cfg, out) = match command {
        Command::Linstab(a) => commands::linstab(a)?,
        Command::Transition(a) => commands::transition(a)?,
        Command::Energy(a) => commands::energy(a)?,
        Command::Sweep(a) => commands::sweep(a)?,
        Command::Field(a) => commands::field(a)?,
    };
    let body = match cfg.format {
        Format::Csv => out.table.to_csv(),
        Format::Json => out.json,
    };
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, body)?;
            for (suffix, svg) in &out.charts {
                std::fs::write(chart_path(path, suffix), svg)?;
            }
        }
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    match out.degenerate {
        Some(msg) => Err(CliError::Degenerate(msg)),
        None => Ok(EXIT_OK),
    }
}
