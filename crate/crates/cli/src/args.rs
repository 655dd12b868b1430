use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pipestab::energystab::MAX_ENERGY_ORDER;
use pipestab::transition::MAX_TRUNCATION;

/// Stability of second-grade fluid Poiseuille flow in a circular pipe.
#[derive(Debug, Parser)]
#[command(name = "pipestab", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smallest dispersion roots, critical Reynolds numbers, exchange of stabilities.
    Linstab(Common),
    /// Transition number A^N, interaction ratio B^N and limit-cycle coefficients at R_c.
    Transition(Common),
    /// Energy thresholds R_m and R_E per ε.
    Energy(Common),
    /// R_m(ε) curves for m = 1..m-max over an ε grid, next to R_c(ε).
    Sweep(Common),
    /// Polar-grid snapshots of the bifurcated periodic solution.
    Field(FieldArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    /// Elasticity numbers (comma separated or repeated).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub epsilon: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub reynolds: Option<f64>,
    /// Number of radial indices j kept in A^N.
    #[arg(long, default_value_t = 10)]
    pub truncation: usize,
    /// Gauss-Legendre nodes of the radial quadrature.
    #[arg(long, default_value_t = 200)]
    pub nodes: usize,
    #[arg(long)]
    pub m_max: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Also write SVG charts next to `--out`.
    #[arg(long)]
    pub plot: bool,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct FieldArgs {
    #[command(flatten)]
    pub common: Common,
    /// Snapshot times (comma separated or repeated).
    #[arg(long, value_delimiter = ',', default_value = "0", allow_negative_numbers = true)]
    pub time: Vec<f64>,
    /// Radii on [0, 1].
    #[arg(long, default_value_t = 21)]
    pub nr: usize,
    /// Angles on [0, 2π).
    #[arg(long, default_value_t = 72)]
    pub ntheta: usize,
}

/// A rejected flag value.
#[derive(Debug)]
pub struct ConfigError(pub String);

fn bad(flag: &str, msg: impl std::fmt::Display) -> ConfigError {
    ConfigError(format!("--{flag}: {msg}"))
}

pub const DEFAULT_EPS_LINSTAB: &[f64] = &[1e-2];
pub const DEFAULT_EPS_TRANSITION: &[f64] = &[1e-3, 1e-2, 1e-1, 1.0];
pub const DEFAULT_EPS_ENERGY: &[f64] = &[0.0, 1e-4, 1e-3, 1e-2, 2e-2];
pub const DEFAULT_EPS_FIELD: &[f64] = &[1e-2];

/// Twenty uniform points on `[1e-4, 0.05]`.
pub fn default_sweep_grid() -> Vec<f64> {
    (0..20).map(|k| 1e-4 + (0.05 - 1e-4) * k as f64 / 19.0).collect()
}

/// Validated settings shared by all subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub epsilon: Vec<f64>,
    pub reynolds: Option<f64>,
    pub truncation: usize,
    pub nodes: usize,
    pub m_max: u32,
    pub format: Format,
    pub plot: bool,
    pub out: Option<PathBuf>,
}

pub struct EpsRule {
    pub defaults: Vec<f64>,
    pub allow_zero: bool,
    pub max_count: usize,
}

pub struct MRule {
    pub default: u32,
    pub range: (u32, u32),
}

impl Common {
    pub fn validate(&self, eps: EpsRule, m: MRule, reynolds_allowed: bool) -> Result<RunConfig, ConfigError> {
        let epsilon = if self.epsilon.is_empty() { eps.defaults } else { self.epsilon.clone() };
        if epsilon.len() > eps.max_count {
            return Err(bad("epsilon", format!("at most {} value(s) accepted, got {}", eps.max_count, epsilon.len())));
        }
        for &e in &epsilon {
            if !e.is_finite() || e < 0.0 || (!eps.allow_zero && e == 0.0) {
                let need = if eps.allow_zero { ">= 0" } else { "> 0" };
                return Err(bad("epsilon", format!("value {e} must be finite and {need}")));
            }
        }
        if let Some(r) = self.reynolds {
            if !reynolds_allowed {
                return Err(bad("reynolds", "not used by this command"));
            }
            if !(r.is_finite() && r > 0.0) {
                return Err(bad("reynolds", format!("value {r} must be finite and > 0")));
            }
        }
        if !(1..=MAX_TRUNCATION).contains(&self.truncation) {
            return Err(bad("truncation", format!("{} outside 1..={MAX_TRUNCATION}", self.truncation)));
        }
        if !(16..=4000).contains(&self.nodes) {
            return Err(bad("nodes", format!("{} outside 16..=4000", self.nodes)));
        }
        let m_max = self.m_max.unwrap_or(m.default);
        if !(m.range.0..=m.range.1).contains(&m_max) {
            return Err(bad("m-max", format!("{m_max} outside {}..={}", m.range.0, m.range.1)));
        }
        if self.plot && self.out.is_none() {
            return Err(bad("plot", "needs --out to name the chart files"));
        }
        Ok(RunConfig {
            epsilon,
            reynolds: self.reynolds,
            truncation: self.truncation,
            nodes: self.nodes,
            m_max,
            format: self.format,
            plot: self.plot,
            out: self.out.clone(),
        })
    }
}

pub fn energy_m_rule() -> MRule {
    MRule { default: MAX_ENERGY_ORDER, range: (5, MAX_ENERGY_ORDER) }
}
