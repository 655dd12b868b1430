//! Output documents. Field names and CSV column orders are frozen; see `docs/schema.md`.

use serde::{Deserialize, Serialize};

/// Rounds to 10 significant digits; `-0` becomes `0`.
pub fn sig10(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.9e}").parse().unwrap()
}

/// `Some(sig10(x))` for finite `x`.
pub fn finite(x: f64) -> Option<f64> {
    x.is_finite().then(|| sig10(x))
}

fn num(x: f64) -> String {
    serde_json::to_string(&sig10(x)).unwrap()
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// A CSV table: header plus rows of preformatted cells.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(self.header).unwrap();
        for r in &self.rows {
            w.write_record(r).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinstabDoc {
    pub command: String,
    pub lambda: Vec<LambdaRow>,
    pub critical: Vec<CriticalRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaRow {
    pub m: u32,
    pub lambda_m1: f64,
    pub sqrt_lambda_over_m: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriticalRow {
    pub epsilon: f64,
    pub r_c: f64,
    pub m_c: u32,
    pub pes_slope: f64,
    pub beta31_chart: Vec<ChartPoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartPoint {
    pub reynolds: f64,
    pub beta31: f64,
}

impl LinstabDoc {
    pub const CSV_HEADER: &'static [&'static str] = &["quantity", "m", "epsilon", "reynolds", "value"];

    pub fn table(&self) -> Table {
        let mut rows = Vec::new();
        for l in &self.lambda {
            rows.push(vec!["lambda_m1".into(), l.m.to_string(), String::new(), String::new(), num(l.lambda_m1)]);
        }
        for l in &self.lambda {
            rows.push(vec![
                "sqrt_lambda_over_m".into(),
                l.m.to_string(),
                String::new(),
                String::new(),
                num(l.sqrt_lambda_over_m),
            ]);
        }
        for c in &self.critical {
            let m = c.m_c.to_string();
            rows.push(vec!["r_c".into(), m.clone(), num(c.epsilon), String::new(), num(c.r_c)]);
            rows.push(vec!["pes_slope".into(), m.clone(), num(c.epsilon), num(c.r_c), num(c.pes_slope)]);
            for p in &c.beta31_chart {
                rows.push(vec!["beta31".into(), "3".into(), num(c.epsilon), num(p.reynolds), num(p.beta31)]);
            }
        }
        Table { header: Self::CSV_HEADER, rows }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionDoc {
    pub command: String,
    pub nodes: usize,
    pub form: String,
    pub runs: Vec<TransitionRun>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionRun {
    pub epsilon: f64,
    pub reynolds: f64,
    pub truncation: usize,
    pub classification: String,
    pub re_a: f64,
    pub im_a: f64,
    pub b: f64,
    pub amplitude_coeff: Option<f64>,
    pub period_coeff: Option<f64>,
    pub quadrature_change: f64,
    pub profile: Vec<TruncationRow>,
}

/// Values of the truncation `A^n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationRow {
    pub n: usize,
    pub re_a: f64,
    pub im_a: f64,
    pub scaled_re_a: f64,
    pub b: f64,
    pub classification: String,
    pub amplitude_coeff: Option<f64>,
    pub period_coeff: Option<f64>,
}

impl TransitionDoc {
    pub const CSV_HEADER: &'static [&'static str] = &[
        "epsilon",
        "reynolds",
        "n",
        "re_a",
        "im_a",
        "scaled_re_a",
        "b",
        "classification",
        "amplitude_coeff",
        "period_coeff",
    ];

    pub fn table(&self) -> Table {
        let mut rows = Vec::new();
        for run in &self.runs {
            for p in &run.profile {
                rows.push(vec![
                    num(run.epsilon),
                    num(run.reynolds),
                    p.n.to_string(),
                    num(p.re_a),
                    num(p.im_a),
                    num(p.scaled_re_a),
                    num(p.b),
                    p.classification.clone(),
                    opt(p.amplitude_coeff),
                    opt(p.period_coeff),
                ]);
            }
        }
        Table { header: Self::CSV_HEADER, rows }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergyDoc {
    pub command: String,
    pub m_max: u32,
    pub runs: Vec<EnergyRun>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergyRun {
    pub epsilon: f64,
    pub r_e: f64,
    pub minimizing_m: u32,
    pub r_c: Option<f64>,
    pub warning: Option<String>,
    pub r_m: Vec<ThresholdRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdRow {
    pub m: u32,
    pub r_m: f64,
}

impl EnergyDoc {
    pub const CSV_HEADER: &'static [&'static str] = &["epsilon", "m", "r_m", "r_e", "minimizing_m", "r_c"];

    pub fn table(&self) -> Table {
        let mut rows = Vec::new();
        for run in &self.runs {
            for t in &run.r_m {
                rows.push(vec![
                    num(run.epsilon),
                    t.m.to_string(),
                    num(t.r_m),
                    num(run.r_e),
                    run.minimizing_m.to_string(),
                    opt(run.r_c),
                ]);
            }
        }
        Table { header: Self::CSV_HEADER, rows }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepDoc {
    pub command: String,
    pub m_max: u32,
    pub points: Vec<SweepPoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepPoint {
    pub epsilon: f64,
    pub m: u32,
    pub r_m: f64,
    pub r_c: Option<f64>,
}

impl SweepDoc {
    pub const CSV_HEADER: &'static [&'static str] = &["epsilon", "m", "r_m", "r_c"];

    pub fn table(&self) -> Table {
        let rows = self
            .points
            .iter()
            .map(|p| vec![num(p.epsilon), p.m.to_string(), num(p.r_m), opt(p.r_c)])
            .collect();
        Table { header: Self::CSV_HEADER, rows }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub command: String,
    pub epsilon: f64,
    pub reynolds: f64,
    pub truncation: usize,
    pub re_a: f64,
    pub im_a: f64,
    pub beta31: f64,
    pub amplitude: f64,
    pub frequency: f64,
    pub period: Option<f64>,
    pub nr: usize,
    pub ntheta: usize,
    pub snapshots: Vec<Snapshot>,
}

/// Row-major samples (`r` outer, `θ` inner).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Snapshot {
    pub t: f64,
    pub r: Vec<f64>,
    pub theta: Vec<f64>,
    pub w: Vec<f64>,
    pub psi: Vec<f64>,
}

impl FieldDoc {
    pub const CSV_HEADER: &'static [&'static str] = &["t", "r", "theta", "w_per", "psi_per"];

    pub fn table(&self) -> Table {
        let mut rows = Vec::new();
        for s in &self.snapshots {
            for (i, &r) in s.r.iter().enumerate() {
                for (k, &th) in s.theta.iter().enumerate() {
                    let idx = i * s.theta.len() + k;
                    rows.push(vec![num(s.t), num(r), num(th), num(s.w[idx]), num(s.psi[idx])]);
                }
            }
        }
        Table { header: Self::CSV_HEADER, rows }
    }
}
