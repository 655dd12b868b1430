//! Static SVG line charts and polar contour plots.

use std::f64::consts::PI;
use std::fmt::Write;

use pipestab::transition::PolarField;

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Tick positions at 1, 2 or 5 times a power of ten, and the decimals to print them with.
fn ticks(lo: f64, hi: f64, target: usize) -> (Vec<f64>, usize) {
    let span = (hi - lo).max(f64::MIN_POSITIVE);
    let raw = span / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|f| f * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    let v = (first..=last).map(|k| k as f64 * step).collect();
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    (v, decimals)
}

fn bounds(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    let mut b: Option<(f64, f64)> = None;
    for v in values.filter(|v| v.is_finite()) {
        b = Some(match b {
            None => (v, v),
            Some((lo, hi)) => (lo.min(v), hi.max(v)),
        });
    }
    b.map(|(lo, hi)| {
        if hi > lo {
            let pad = 0.05 * (hi - lo);
            (lo - pad, hi + pad)
        } else {
            let pad = if lo == 0.0 { 1.0 } else { 0.05 * lo.abs() };
            (lo - pad, hi + pad)
        }
    })
}

/// Line chart of one or more series with axes, ticks and a legend.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let (w, h) = (720.0, 440.0);
    let (ml, mr, mt, mb) = (90.0, 170.0, 40.0, 60.0);
    let (pw, ph) = (w - ml - mr, h - mt - mb);
    let all = || series.iter().flat_map(|s| s.points.iter());
    let (x0, x1) = bounds(all().map(|p| p.0)).unwrap_or((0.0, 1.0));
    let (y0, y1) = bounds(all().map(|p| p.1)).unwrap_or((0.0, 1.0));
    let sx = |x: f64| ml + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| mt + ph - (y - y0) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#, ml + pw / 2.0, esc(title));
    let _ = writeln!(s, r##"<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="#000"/>"##);

    let (xt, xd) = ticks(x0, x1, 6);
    for t in xt {
        let x = sx(t);
        let _ = writeln!(s, r##"<line x1="{x:.2}" y1="{}" x2="{x:.2}" y2="{}" stroke="#000"/>"##, mt + ph, mt + ph + 5.0);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{}" text-anchor="middle">{t:.xd$}</text>"#, mt + ph + 19.0);
    }
    let (yt, yd) = ticks(y0, y1, 6);
    for t in yt {
        let y = sy(t);
        let _ = writeln!(s, r##"<line x1="{}" y1="{y:.2}" x2="{ml}" y2="{y:.2}" stroke="#000"/>"##, ml - 5.0);
        let _ = writeln!(s, r##"<line x1="{ml}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="#ddd"/>"##, ml + pw);
        let _ = writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end">{t:.yd$}</text>"#, ml - 8.0, y + 4.0);
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, ml + pw / 2.0, h - 14.0, esc(x_label));
    let _ = writeln!(
        s,
        r#"<text x="20" y="{0}" text-anchor="middle" transform="rotate(-90 20 {0})">{1}</text>"#,
        mt + ph / 2.0,
        esc(y_label)
    );

    for (k, ser) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let pts: Vec<String> = ser
            .points
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|p| format!("{:.2},{:.2}", sx(p.0), sy(p.1)))
            .collect();
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, pts.join(" "));
        for p in &pts {
            let (x, y) = p.split_once(',').unwrap();
            let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="2.5" fill="{color}"/>"#);
        }
        let ly = mt + 14.0 + 18.0 * k as f64;
        let lx = ml + pw + 14.0;
        let _ = writeln!(s, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#, lx + 22.0);
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, lx + 28.0, ly + 4.0, esc(&ser.label));
    }
    s.push_str("</svg>\n");
    s
}

/// Marching-squares iso-lines of `values` (row-major in `r`, then `θ`) on the unit disk.
pub fn polar_contour(title: &str, field: &PolarField<f64>, values: &[f64], levels: usize) -> String {
    let (w, h) = (480.0, 520.0);
    let (cx, cy, rad) = (240.0, 280.0, 210.0);
    let nr = field.r.len();
    let nt = field.theta.len();
    let vmax = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let at = |i: usize, k: usize| values[i * nt + k % nt];
    let th = |k: usize| if k == nt { field.theta[0] + 2.0 * PI } else { field.theta[k] };
    let map = |r: f64, t: f64| (cx + rad * r * t.cos(), cy - rad * r * t.sin());

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{cx}" y="30" text-anchor="middle" font-size="15">{}</text>"#, esc(title));
    let _ = writeln!(s, r##"<circle cx="{cx}" cy="{cy}" r="{rad}" fill="none" stroke="#000"/>"##);
    if vmax == 0.0 || nr < 2 || nt < 2 {
        s.push_str("</svg>\n");
        return s;
    }
    for l in 1..=levels {
        for sign in [1.0, -1.0] {
            let level = sign * vmax * l as f64 / (levels + 1) as f64;
            let mut d = String::new();
            for i in 0..nr - 1 {
                for k in 0..nt {
                    let corner = [
                        (field.r[i], th(k), at(i, k)),
                        (field.r[i + 1], th(k), at(i + 1, k)),
                        (field.r[i + 1], th(k + 1), at(i + 1, k + 1)),
                        (field.r[i], th(k + 1), at(i, k + 1)),
                    ];
                    let idx = corner.iter().enumerate().fold(0, |acc, (n, c)| acc | (((c.2 > level) as usize) << n));
                    let edge = |e: usize| {
                        let (a, b) = (corner[e], corner[(e + 1) % 4]);
                        let f = (level - a.2) / (b.2 - a.2);
                        map(a.0 + f * (b.0 - a.0), a.1 + f * (b.1 - a.1))
                    };
                    let centre = corner.iter().map(|c| c.2).sum::<f64>() / 4.0 > level;
                    let segs: &[(usize, usize)] = match idx {
                        1 | 14 => &[(3, 0)],
                        2 | 13 => &[(0, 1)],
                        3 | 12 => &[(3, 1)],
                        4 | 11 => &[(1, 2)],
                        6 | 9 => &[(0, 2)],
                        7 | 8 => &[(2, 3)],
                        5 if centre => &[(0, 1), (2, 3)],
                        5 => &[(3, 0), (1, 2)],
                        10 if centre => &[(3, 0), (1, 2)],
                        10 => &[(0, 1), (2, 3)],
                        _ => &[],
                    };
                    for &(ea, eb) in segs {
                        let (p, q) = (edge(ea), edge(eb));
                        let _ = write!(d, "M{:.2} {:.2}L{:.2} {:.2}", p.0, p.1, q.0, q.1);
                    }
                }
            }
            let (color, dash) = if sign > 0.0 { ("#d62728", "") } else { ("#1f77b4", r#" stroke-dasharray="4 3""#) };
            if !d.is_empty() {
                let _ = writeln!(s, r#"<path d="{d}" fill="none" stroke="{color}"{dash}/>"#);
            }
        }
    }
    let _ = writeln!(
        s,
        r#"<text x="{cx}" y="{}" text-anchor="middle">{levels} levels per sign, max |value| = {vmax:.4e}; solid positive, dashed negative</text>"#,
        h - 12.0
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ticks_are_round_numbers() {
        let (t, d) = ticks(0.93, 1.03, 5);
        assert_eq!(d, 2);
        assert!(t.iter().all(|v| ((v * 50.0).round() - v * 50.0).abs() < 1e-9));
        assert!(t.first().unwrap() >= &0.93 && t.last().unwrap() <= &1.03);
    }

    #[test]
    fn chart_is_well_formed() {
        let s = line_chart("a < b", "x", "y", &[Series { label: "s&t".into(), points: vec![(1.0, 2.0), (2.0, 3.0)] }]);
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
        assert!(s.contains("a &lt; b") && s.contains("s&amp;t"));
        assert_eq!(s.matches("<circle").count(), 2);
    }

    #[test]
    fn contour_of_cos_theta_has_both_signs() {
        let nr = 11;
        let nt = 36;
        let r: Vec<f64> = (0..nr).map(|i| i as f64 / 10.0).collect();
        let theta: Vec<f64> = (0..nt).map(|k| 2.0 * PI * k as f64 / nt as f64).collect();
        let mut w = Vec::new();
        for &ri in &r {
            for &t in &theta {
                w.push(ri * t.cos());
            }
        }
        let f = PolarField { r, theta, psi: w.clone(), w: w.clone() };
        let s = polar_contour("x", &f, &w, 3);
        assert_eq!(s.matches("<path").count(), 6);
    }
}
