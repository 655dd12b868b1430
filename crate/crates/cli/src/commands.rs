use rayon::prelude::*;

use pipestab::energystab::{energy_threshold, solve_rm, MAX_ENERGY_ORDER};
use pipestab::linstab::{critical_reynolds, pes_slope, solve_beta, solve_lambda_m1, MAX_ORDER};
use pipestab::transition::{transition_number_with, Classification, PolarGrid};
use pipestab::{BifurcatedSolution, Error, FluidParams, TransitionOptions};

use crate::args::{
    default_sweep_grid, energy_m_rule, Common, EpsRule, FieldArgs, MRule, RunConfig, DEFAULT_EPS_ENERGY,
    DEFAULT_EPS_FIELD, DEFAULT_EPS_LINSTAB, DEFAULT_EPS_TRANSITION,
};
use crate::report::*;
use crate::svg::{line_chart, polar_contour, Series};
use crate::CliError;

/// A finished run: the document in both formats and any charts, keyed by file suffix.
pub struct Output {
    pub json: String,
    pub table: Table,
    pub charts: Vec<(String, String)>,
    /// Set when a transition number is degenerate; output is still written.
    pub degenerate: Option<String>,
}

impl Output {
    fn new<D: serde::Serialize>(doc: &D, table: Table) -> Self {
        let mut json = serde_json::to_string_pretty(doc).unwrap();
        json.push('\n');
        Self { json, table, charts: Vec::new(), degenerate: None }
    }
}

/// Offsets of the `β_{3,1}` sign chart, as fractions of `R_c`.
const CHART_FACTORS: [f64; 11] = [0.9, 0.92, 0.94, 0.96, 0.98, 1.0, 1.02, 1.04, 1.06, 1.08, 1.1];

pub fn linstab(args: &Common) -> Result<(RunConfig, Output), CliError> {
    let cfg = args.validate(
        EpsRule { defaults: DEFAULT_EPS_LINSTAB.to_vec(), allow_zero: false, max_count: 64 },
        MRule { default: 6, range: (1, MAX_ORDER) },
        true,
    )?;
    let lambda = (1..=cfg.m_max)
        .into_par_iter()
        .map(|m| {
            let l: f64 = solve_lambda_m1(m)?;
            Ok(LambdaRow { m, lambda_m1: sig10(l), sqrt_lambda_over_m: sig10((l / m as f64).sqrt()) })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let critical = cfg
        .epsilon
        .par_iter()
        .map(|&eps| {
            let (rc, mc) = critical_reynolds(eps)?;
            let mut rs: Vec<f64> = CHART_FACTORS.iter().map(|f| f * rc).collect();
            if let Some(r) = cfg.reynolds {
                rs.push(r);
                rs.sort_by(f64::total_cmp);
            }
            let chart = rs
                .iter()
                .map(|&r| {
                    let b = solve_beta(3, 1, &FluidParams::new(eps, r)?)?;
                    Ok(ChartPoint { reynolds: sig10(r), beta31: sig10(b) })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(CriticalRow {
                epsilon: sig10(eps),
                r_c: sig10(rc),
                m_c: mc,
                pes_slope: sig10(pes_slope(eps)?),
                beta31_chart: chart,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let doc = LinstabDoc { command: "linstab".into(), lambda, critical };
    let mut out = Output::new(&doc, doc.table());
    if cfg.plot {
        let series = doc
            .critical
            .iter()
            .map(|c| Series {
                label: format!("ε = {}", c.epsilon),
                points: c.beta31_chart.iter().map(|p| (p.reynolds / c.r_c, p.beta31)).collect(),
            })
            .collect::<Vec<_>>();
        out.charts.push((String::new(), line_chart("β₃₁ near R_c", "R / R_c", "β₃₁", &series)));
    }
    Ok((cfg, out))
}

fn options(cfg: &RunConfig) -> TransitionOptions {
    TransitionOptions { nodes: cfg.nodes, ..Default::default() }
}

fn amplitude_coeff(re_a: f64) -> Option<f64> {
    finite(2.0 / re_a.abs().sqrt())
}

fn period_coeff(a: pipestab::Complex) -> Option<f64> {
    finite(2.0 * std::f64::consts::PI * a.re / a.im)
}

pub fn transition(args: &Common) -> Result<(RunConfig, Output), CliError> {
    let cfg = args.validate(
        EpsRule { defaults: DEFAULT_EPS_TRANSITION.to_vec(), allow_zero: false, max_count: 64 },
        MRule { default: 0, range: (0, 0) },
        false,
    )?;
    if args.m_max.is_some() {
        return Err(CliError::Config("--m-max: not used by this command".into()));
    }
    let opts = options(&cfg);
    let mut runs = Vec::new();
    let mut degenerate = Vec::new();
    for &eps in &cfg.epsilon {
        let rep = transition_number_with(eps, cfg.truncation, &opts)?;
        if rep.classification == Classification::Degenerate {
            degenerate.push(eps);
        }
        let profile = (0..rep.truncation)
            .map(|k| {
                let a = rep.partial_sums[k];
                TruncationRow {
                    n: k + 1,
                    re_a: sig10(a.re),
                    im_a: sig10(a.im),
                    scaled_re_a: sig10(rep.scaled_profile[k]),
                    b: sig10(rep.b_profile[k]),
                    classification: Classification::of(a).label().into(),
                    amplitude_coeff: amplitude_coeff(a.re),
                    period_coeff: period_coeff(a),
                }
            })
            .collect();
        runs.push(TransitionRun {
            epsilon: sig10(eps),
            reynolds: sig10(rep.reynolds),
            truncation: rep.truncation,
            classification: rep.classification.label().into(),
            re_a: sig10(rep.a_n.re),
            im_a: sig10(rep.a_n.im),
            b: sig10(rep.b_n),
            amplitude_coeff: amplitude_coeff(rep.a_n.re),
            period_coeff: period_coeff(rep.a_n),
            quadrature_change: sig10(rep.quadrature_change),
            profile,
        });
    }
    let doc = TransitionDoc { command: "transition".into(), nodes: cfg.nodes, form: "literal".into(), runs };
    let mut out = Output::new(&doc, doc.table());
    if cfg.plot {
        let series = |f: fn(&TruncationRow) -> f64| {
            doc.runs
                .iter()
                .map(|r| Series {
                    label: format!("ε = {}", r.epsilon),
                    points: r.profile.iter().map(|p| (p.n as f64, f(p))).collect(),
                })
                .collect::<Vec<_>>()
        };
        out.charts.push(("_a".into(), line_chart("Scaled Re(Aᴺ)", "N", "Re(Aᴺ)/|Re(A¹)|", &series(|p| p.scaled_re_a))));
        out.charts.push(("_b".into(), line_chart("Interaction ratio Bᴺ", "N", "Bᴺ", &series(|p| p.b))));
    }
    if !degenerate.is_empty() {
        out.degenerate = Some(format!("transition number is degenerate (|Re A| below tolerance) at ε = {degenerate:?}"));
    }
    Ok((cfg, out))
}

pub fn energy(args: &Common) -> Result<(RunConfig, Output), CliError> {
    let cfg = args.validate(
        EpsRule { defaults: DEFAULT_EPS_ENERGY.to_vec(), allow_zero: true, max_count: 256 },
        energy_m_rule(),
        false,
    )?;
    let runs = cfg
        .epsilon
        .par_iter()
        .map(|&eps| {
            let rep = energy_threshold(eps, cfg.m_max)?;
            Ok(EnergyRun {
                epsilon: sig10(eps),
                r_e: sig10(rep.r_e),
                minimizing_m: rep.minimizing_m,
                r_c: rep.r_c.map(sig10),
                warning: rep.warning.clone(),
                r_m: rep.per_m.iter().map(|&(m, r)| ThresholdRow { m, r_m: sig10(r) }).collect(),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let doc = EnergyDoc { command: "energy".into(), m_max: cfg.m_max, runs };
    let mut out = Output::new(&doc, doc.table());
    if cfg.plot {
        let series = vec![
            Series { label: "R_E".into(), points: doc.runs.iter().map(|r| (r.epsilon, r.r_e)).collect() },
            Series {
                label: "R_c".into(),
                points: doc.runs.iter().filter_map(|r| r.r_c.map(|c| (r.epsilon, c))).collect(),
            },
        ];
        out.charts.push((String::new(), line_chart("Energy and linear thresholds", "ε", "R", &series)));
    }
    Ok((cfg, out))
}

pub fn sweep(args: &Common) -> Result<(RunConfig, Output), CliError> {
    let cfg = args.validate(
        EpsRule { defaults: default_sweep_grid(), allow_zero: true, max_count: 4096 },
        MRule { default: 3, range: (1, MAX_ENERGY_ORDER) },
        false,
    )?;
    let items: Vec<(f64, u32)> = cfg.epsilon.iter().flat_map(|&e| (1..=cfg.m_max).map(move |m| (e, m))).collect();
    let rm = items.par_iter().map(|&(e, m)| solve_rm(m, e)).collect::<Result<Vec<f64>, Error>>()?;
    let rc = cfg
        .epsilon
        .par_iter()
        .map(|&e| if e > 0.0 { critical_reynolds(e).map(|(r, _)| Some(r)) } else { Ok(None) })
        .collect::<Result<Vec<_>, Error>>()?;
    let m_max = cfg.m_max as usize;
    let points = items
        .iter()
        .zip(&rm)
        .enumerate()
        .map(|(k, (&(e, m), &r))| SweepPoint { epsilon: sig10(e), m, r_m: sig10(r), r_c: rc[k / m_max].map(sig10) })
        .collect();
    let doc = SweepDoc { command: "sweep".into(), m_max: cfg.m_max, points };
    let mut out = Output::new(&doc, doc.table());
    if cfg.plot {
        let mut series: Vec<Series> = (1..=cfg.m_max)
            .map(|m| Series {
                label: format!("R_{m}"),
                points: doc.points.iter().filter(|p| p.m == m).map(|p| (p.epsilon, p.r_m)).collect(),
            })
            .collect();
        series.push(Series {
            label: "R_c".into(),
            points: doc.points.iter().filter(|p| p.m == 1).filter_map(|p| p.r_c.map(|c| (p.epsilon, c))).collect(),
        });
        out.charts.push((String::new(), line_chart("Energy thresholds R_m(ε)", "ε", "R", &series)));
    }
    Ok((cfg, out))
}

/// Snapshot phases are rounded to this many steps per period.
const PHASE_STEPS: f64 = (1u64 << 40) as f64;

/// Values below this fraction of the snapshot maximum (over `w` and `ψ`) are written as 0.
const FIELD_FLOOR: f64 = 1e-12;

fn floor_small(v: &[f64], max: f64) -> Vec<f64> {
    v.iter().map(|&x| if x.abs() <= FIELD_FLOOR * max { 0.0 } else { sig10(x) }).collect()
}

pub fn field(args: &FieldArgs) -> Result<(RunConfig, Output), CliError> {
    let cfg = args.common.validate(
        EpsRule { defaults: DEFAULT_EPS_FIELD.to_vec(), allow_zero: false, max_count: 1 },
        MRule { default: 0, range: (0, 0) },
        true,
    )?;
    if args.common.m_max.is_some() {
        return Err(CliError::Config("--m-max: not used by this command".into()));
    }
    if args.nr < 2 || args.nr > 2000 {
        return Err(CliError::Config(format!("--nr: {} outside 2..=2000", args.nr)));
    }
    if args.ntheta < 2 || args.ntheta > 4000 {
        return Err(CliError::Config(format!("--ntheta: {} outside 2..=4000", args.ntheta)));
    }
    if let Some(t) = args.time.iter().find(|t| !t.is_finite()) {
        return Err(CliError::Config(format!("--time: value {t} must be finite")));
    }
    let eps = cfg.epsilon[0];
    let rep = transition_number_with(eps, cfg.truncation, &options(&cfg))?;
    if rep.classification == Classification::Degenerate {
        return Err(CliError::Degenerate(format!("transition number is degenerate at ε = {eps}; no periodic solution")));
    }
    let reynolds = cfg.reynolds.unwrap_or(1.05 * rep.reynolds);
    let mut sol = match BifurcatedSolution::new(eps, reynolds, rep.a_n) {
        Err(Error::InconsistentSigns(msg)) => {
            return Err(CliError::Config(format!("--reynolds: {reynolds} gives no real periodic solution ({msg})")))
        }
        r => r?,
    };
    // The published period is the one the snapshots are periodic in.
    let period = sig10(sol.period());
    if period.is_finite() {
        sol.frequency = 2.0 * std::f64::consts::PI / period;
    }
    let grid = PolarGrid::uniform(args.nr, args.ntheta)?;
    let mut snapshots = Vec::new();
    for &t in &args.time {
        let phase = if period.is_finite() {
            let frac = ((t / period).rem_euclid(1.0) * PHASE_STEPS).round() / PHASE_STEPS;
            frac * period
        } else {
            t
        };
        let f = sol.field(phase, &grid)?;
        let max = f.w.iter().chain(&f.psi).fold(0.0f64, |a, x| a.max(x.abs()));
        snapshots.push(Snapshot {
            t: sig10(t),
            r: f.r.iter().map(|&x| sig10(x)).collect(),
            theta: f.theta.iter().map(|&x| sig10(x)).collect(),
            w: floor_small(&f.w, max),
            psi: floor_small(&f.psi, max),
        });
    }
    let doc = FieldDoc {
        command: "field".into(),
        epsilon: sig10(eps),
        reynolds: sig10(reynolds),
        truncation: cfg.truncation,
        re_a: sig10(rep.a_n.re),
        im_a: sig10(rep.a_n.im),
        beta31: sig10(sol.beta),
        amplitude: sig10(sol.amplitude),
        frequency: sig10(sol.frequency),
        period: finite(period),
        nr: args.nr,
        ntheta: args.ntheta,
        snapshots,
    };
    let mut out = Output::new(&doc, doc.table());
    if cfg.plot {
        for (k, s) in doc.snapshots.iter().enumerate() {
            let pf = pipestab::transition::PolarField { r: s.r.clone(), theta: s.theta.clone(), w: s.w.clone(), psi: s.psi.clone() };
            let title = format!("w_per at t = {} (ε = {}, R = {})", s.t, doc.epsilon, doc.reynolds);
            out.charts.push((format!("_t{k}"), polar_contour(&title, &pf, &s.w, 6)));
        }
    }
    Ok((cfg, out))
}
