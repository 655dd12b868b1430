use num_complex::Complex64 as C;

use super::*;
use crate::error::Error;
use crate::field::inner_product;
use crate::quadrature::RadialGrid;
use crate::specfun::{bessel_j_zero, cyl_deriv, cyl_eval, CylinderKind};

/// Smallest positive roots of the β = 0 cross product, 30-digit root finding.
const LAMBDA_M1: [f64; 6] = [
    21.260_397_694_614_6,
    34.877_035_420_319_7,
    51.030_035_483_776_1,
    69.665_830_696_789_1,
    90.738_986_317_446_1,
    114.212_521_635_51,
];

fn params(eps: f64, r: f64) -> FluidParams<f64> {
    FluidParams::new(eps, r).unwrap()
}

fn rc(eps: f64) -> f64 {
    critical_reynolds(eps).unwrap().0
}

#[test]
fn lambda_mu_at_zero_beta() {
    let p = params(0.04, 7.0);
    let (l, u) = lambda_mu(3, 0.0, &p).unwrap();
    let want = 0.2 * 3.0 * 49.0;
    assert!((l - want).abs() < 1e-12 && (u + want).abs() < 1e-12);
}

#[test]
fn lambda_mu_recovers_tabulated_root_at_unit_epsilon() {
    let (l, _) = lambda_mu(3, 0.0, &params(1.0, 4.124)).unwrap();
    assert!((l - 51.03).abs() < 0.01);
}

#[test]
fn lambda_mu_singular_denominator() {
    let p = params(0.5, 2.0);
    assert!(matches!(lambda_mu(1, -1.0, &p), Err(Error::SingularDenominator(_))));
}

#[test]
fn lambda_m1_matches_reference_roots() {
    for (m, &want) in (1..=6).zip(LAMBDA_M1.iter()) {
        let got: f64 = solve_lambda_m1(m).unwrap();
        assert!((got - want).abs() < 1e-10 * want, "m = {m}: {got}");
    }
    assert!(matches!(solve_lambda_m1::<f64>(0), Err(Error::Range(_))));
    assert!(matches!(solve_lambda_m1::<f64>(21), Err(Error::Range(_))));
}

#[test]
fn lambda_m1_tabulated_values() {
    for (m, want, tol) in [(3u32, 51.030f64, 1e-3), (1, 21.260, 1e-3), (6, 114.21, 1e-2)] {
        let got: f64 = solve_lambda_m1(m).unwrap();
        assert!((got - want).abs() < tol, "m = {m}: {got}");
    }
}

#[test]
fn lambda_bounds_observed_truth() {
    let rows = verify_lambda_bounds::<f64>(20).unwrap();
    for b in &rows {
        assert!(b.upper_holds(), "upper bound fails at m = {}", b.m);
        // The stated lower bound is too large for m <= 3.
        assert_eq!(b.lower_holds(), b.m >= 4, "lower bound at m = {}", b.m);
    }
    let m3 = rows[2];
    assert!((m3.lower - 2623.2).abs() < 0.1 && (m3.lambda * m3.lambda - 2604.06).abs() < 0.01);
}

#[test]
fn orders_above_six_cannot_be_critical() {
    let (k, m): (f64, u32) = critical_constant().unwrap();
    assert_eq!(m, 3);
    for m in 7..=20u32 {
        let via_bound = (lambda_lower_bound::<f64>(m).sqrt() / f64::from(m)).sqrt();
        assert!(via_bound > k, "m = {m}");
        let actual = (solve_lambda_m1::<f64>(m).unwrap() / f64::from(m)).sqrt();
        assert!(actual > 4.124, "m = {m}");
    }
}

#[test]
fn critical_reynolds_values() {
    for (eps, want) in [(1e-4f64, 41.24f64), (1e-2, 13.0412)] {
        let (r, m) = critical_reynolds(eps).unwrap();
        assert_eq!(m, 3);
        assert!((r - want).abs() < 1e-3 * want, "ε = {eps}: {r}");
    }
    for eps in [1e-4, 1e-3, 1e-2, 2e-2, 1.0] {
        let r = rc(eps);
        assert!((r * eps.powf(0.25) - 4.124).abs() < 1e-3);
    }
    assert!(matches!(critical_reynolds(0.0), Err(Error::Domain(_))));
}

#[test]
fn dispersion_near_root_on_the_critical_curve() {
    for eps in [1e-3f64, 1e-2, 1e-1, 1.0] {
        let r = eps.powf(-0.25) * (51.030f64 / 3.0).sqrt();
        let p = params(eps, r);
        let (g, scale) = dispersion_reduced_scaled(3, 0.0, &p).unwrap();
        assert!(g.abs() < 1e-6 * scale, "ε = {eps}: {g} vs {scale}");
        let exact = params(eps, rc(eps));
        let (g, scale) = dispersion_reduced_scaled(3, 0.0, &exact).unwrap();
        assert!(g.abs() < 1e-10 * scale);
    }
}

/// Determinant of the boundary system with `c_4 = c_5 = c_6 = 0`, assembled
/// directly from complex Bessel values.
fn boundary_determinant(m: u32, beta: f64, p: &FluidParams<f64>) -> C {
    let (l, u) = lambda_mu(m, beta, p).unwrap();
    let a = p.coupling(m);
    let sl = C::new(l, 0.0).sqrt();
    let su = C::new(u, 0.0).sqrt();
    let j = |z: C| cyl_eval(CylinderKind::J, m as i32, z).unwrap();
    let dj = |z: C| cyl_deriv(CylinderKind::J, m as i32, z).unwrap();
    let one = C::new(1.0, 0.0);
    let mf = f64::from(m);
    let rows = [
        [one, j(sl), j(su)],
        [one * beta, j(sl) * a, -j(su) * a],
        [one * beta * mf, sl * dj(sl) * a, -su * dj(su) * a],
    ];
    rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
        - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
        + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
}

#[test]
fn dispersion_equals_boundary_determinant() {
    let cases = [
        (1, -0.3, 0.01, 20.0),
        (3, 0.05, 0.2, 5.0),
        (3, -1.4, 0.05, 9.0),
        (6, -0.8, 1.0, 3.0),
        (2, 0.7, 0.001, 30.0),
        (5, -2.5, 0.3, 6.5),
    ];
    for (m, beta, eps, r) in cases {
        let p = params(eps, r);
        let (l, u) = lambda_mu(m, beta, &p).unwrap();
        let d = 1.0 / r + eps * beta;
        let det = boundary_determinant(m, beta, &p);
        let disp = dispersion(m, beta, &p).unwrap();
        let full = dispersion_phase::<f64>(m, l, u) * disp;
        let pred = full * C::new(l, 0.0).sqrt() * C::new(u, 0.0).sqrt() * p.coupling(m) * d;
        assert!(
            (det - pred).norm() < 1e-8 * det.norm(),
            "(m, β, ε, R) = {:?}: {det} vs {pred}",
            (m, beta, eps, r)
        );
    }
}

#[test]
fn dispersion_changes_sign_across_first_root() {
    let eps = 0.01;
    let p = params(eps, 1.05 * rc(eps));
    let b31 = solve_beta(3, 1, &p).unwrap();
    let mut flips = Vec::new();
    let mut prev = dispersion(3, b31 + 0.05, &p).unwrap();
    for k in 1..=1000 {
        let b = b31 + 0.05 - 1e-4 * f64::from(k);
        let v = dispersion(3, b, &p).unwrap();
        if (v > 0.0) != (prev > 0.0) {
            flips.push(b);
        }
        prev = v;
    }
    assert!(!flips.is_empty());
    assert!((flips[0] - b31).abs() < 1e-4, "{flips:?} vs {b31}");
}

#[test]
fn beta31_vanishes_at_critical_reynolds() {
    for eps in [1e-3, 1e-2, 1.0] {
        let b = solve_beta(3, 1, &params(eps, rc(eps))).unwrap();
        assert!(b.abs() < 1e-8, "ε = {eps}: {b}");
    }
}

#[test]
fn axisymmetric_eigenvalues_are_closed_form() {
    let p = params(0.1, 12.0);
    let a: f64 = bessel_j_zero(0, 1).unwrap();
    let b = solve_beta(0, 1, &p).unwrap();
    assert!((b + a * a / (12.0 * (1.0 + 0.1 * a * a))).abs() < 1e-14);
    let all = beta_spectrum(0, 12, &p).unwrap();
    assert!(all.windows(2).all(|w| w[0] >= w[1]));
    let fam = m0_spectrum(12, &p).unwrap();
    assert!(fam.iter().any(|e| e.family == AxisymmetricFamily::StreamFunction));
}

#[test]
fn roots_satisfy_dispersion_and_descend() {
    for (m, eps, r) in [(3, 0.01, 14.0), (6, 1.0, 4.1), (1, 0.1, 7.0), (2, 0.0, 10.0)] {
        let p = params(eps, r);
        let betas = beta_spectrum(m, 10, &p).unwrap();
        assert!(betas.windows(2).all(|w| w[0] > w[1]), "{betas:?}");
        for &b in &betas {
            let (g, scale) = dispersion_reduced_scaled(m as u32, b, &p).unwrap();
            assert!(g.abs() <= 1e-10 * scale, "(m, β) = ({m}, {b}): {g} / {scale}");
        }
        if eps > 0.0 {
            let pole = -1.0 / (eps * r);
            assert!(betas.iter().all(|&b| b > pole));
        }
    }
}

#[test]
fn negative_order_spectrum_matches_positive() {
    let p = params(0.02, 11.0);
    assert_eq!(beta_spectrum(-4, 5, &p).unwrap(), beta_spectrum(4, 5, &p).unwrap());
}

#[test]
fn exchange_of_stabilities_sign_chart() {
    for eps in [1e-4, 1e-3, 1e-2, 2e-2, 1e-1, 1.0] {
        let r = rc(eps);
        assert!(solve_beta(3, 1, &params(eps, 0.98 * r)).unwrap() < 0.0);
        assert!(solve_beta(3, 1, &params(eps, 1.02 * r)).unwrap() > 0.0);
        let p = params(eps, r);
        for (m, j) in [(1, 1), (2, 1), (4, 1), (5, 1), (6, 1), (3, 2), (0, 1)] {
            let b = solve_beta(m, j, &p).unwrap();
            assert!(b < 0.0, "ε = {eps}, (m, j) = ({m}, {j}): {b}");
        }
    }
}

#[test]
fn newtonian_limit_is_linearly_stable() {
    for r in [1.0, 10.0, 100.0] {
        let p = params(0.0, r);
        for m in 0..=6 {
            for b in beta_spectrum(m, 8, &p).unwrap() {
                assert!(b < 0.0, "R = {r}, m = {m}: {b}");
            }
        }
    }
}

#[test]
fn pes_slope_against_two_digit_formula() {
    for eps in [0.01f64, 1.0] {
        let s = pes_slope(eps).unwrap();
        let formula = 0.12 * eps.sqrt() / (0.02 + eps);
        assert!((s / formula - 1.0).abs() < 0.10, "ε = {eps}: {s} vs {formula}");
    }
    for eps in [1e-4, 1e-3, 1e-2, 1e-1, 1.0] {
        assert!(pes_slope(eps).unwrap() > 0.0);
    }
}

#[test]
fn reduced_dispersion_is_real_on_the_real_axis() {
    let p = params(0.05, 9.0);
    for b in [-3.0, -0.7, 0.0, 0.4] {
        let g = dispersion_reduced_complex(3, C::new(b, 0.0), &p).unwrap();
        let gr = dispersion_reduced(3, b, &p).unwrap();
        assert!(g.im.abs() < 1e-13 * g.norm().max(1e-300));
        assert!((g.re - gr).abs() < 1e-11 * gr.abs().max(1e-300));
    }
}

/// Argument principle on a box in the upper half β-plane: no complex roots.
#[test]
fn no_complex_eigenvalues_in_scanned_window() {
    for (m, eps, r) in [(3, 0.01, 13.7), (1, 0.1, 7.0), (6, 1.0, 4.3)] {
        let p = params(eps, r);
        let x0 = beta_spectrum(m as i32, 10, &p).unwrap()[9];
        let (x1, y0, y1) = (1.0, 1e-3, 2.0);
        let pts = 20000;
        let mut path = Vec::new();
        for k in 0..pts {
            path.push(C::new(x0 + (x1 - x0) * k as f64 / pts as f64, y0));
        }
        for k in 0..pts {
            path.push(C::new(x1, y0 + (y1 - y0) * k as f64 / pts as f64));
        }
        for k in 0..pts {
            path.push(C::new(x1 - (x1 - x0) * k as f64 / pts as f64, y1));
        }
        for k in 0..pts {
            path.push(C::new(x0, y1 - (y1 - y0) * k as f64 / pts as f64));
        }
        path.push(path[0]);
        let mut winding = 0.0;
        let mut prev = dispersion_reduced_complex(m, path[0], &p).unwrap();
        for z in &path[1..] {
            let g = dispersion_reduced_complex(m, *z, &p).unwrap();
            winding += (g / prev).arg();
            prev = g;
        }
        let n = winding / (2.0 * std::f64::consts::PI);
        assert!(n.abs() < 0.1, "(m, ε, R) = ({m}, {eps}, {r}): winding {n}");
    }
}

#[test]
fn modes_satisfy_boundary_conditions() {
    let eps = 0.01;
    let p = params(eps, rc(eps));
    for (m, j) in [(3, 1), (3, 4), (6, 1), (6, 10), (1, 2), (0, 1), (0, 2), (-3, 1)] {
        let mode = build_mode(m, j, &p).unwrap();
        let (a, b) = mode.boundary_residuals().unwrap();
        for v in a.iter().chain(b.iter()) {
            assert!(*v < 1e-10, "(m, j) = ({m}, {j}): {a:?} {b:?}");
        }
    }
}

#[test]
fn first_axisymmetric_mode_is_vertical_bessel() {
    let p = params(0.01, 13.0);
    let mode = build_mode(0, 1, &p).unwrap();
    let a: f64 = bessel_j_zero(0, 1).unwrap();
    assert!(mode.psi.is_zero());
    assert_eq!(mode.w.terms.len(), 1);
    assert_eq!(mode.w.terms[0].scale, a);
    assert!(mode.w.terms[0].coeff.im.abs() < 1e-15 && mode.w.terms[0].coeff.re > 0.0);
}

#[test]
fn eigen_relation_holds_pointwise() {
    for (eps, m, j) in [(0.01, 3, 1), (1.0, 6, 2), (0.1, 0, 2), (0.001, -3, 1)] {
        let p = params(eps, rc(eps));
        let mode = build_mode(m, j, &p).unwrap();
        let f = mode.field();
        let lhs = f.apply_n(&p);
        let rhs = f.apply_m(eps);
        let adj = mode.adjoint();
        let mut scale = 0.0f64;
        let mut err = 0.0f64;
        let mut aerr = 0.0f64;
        let mut ascale = 0.0f64;
        for k in 0..=50 {
            let r = 0.02 * f64::from(k);
            let n = (lhs.w.eval(r).unwrap(), lhs.psi.eval(r).unwrap());
            let mm = (rhs.w.eval(r).unwrap(), rhs.psi.eval(r).unwrap());
            err = err.max((n.0 - mm.0 * mode.beta).norm()).max((n.1 - mm.1 * mode.beta).norm());
            scale = scale.max(n.0.norm()).max(n.1.norm()).max(mm.1.norm());
            // Adjoint: N* = [[Δ/R, −εRΔ∂θ], [−R∂θ, −Δ²/R]].
            let im_r = C::new(0.0, f64::from(m) * p.reynolds);
            let (wa, pa) = (&adj.w, &adj.psi);
            let na0 = wa.laplacian().eval(r).unwrap() / p.reynolds
                - im_r * eps * pa.laplacian().eval(r).unwrap();
            let na1 = -im_r * wa.eval(r).unwrap() - pa.laplacian().laplacian().eval(r).unwrap() / p.reynolds;
            let ma = adj.apply_m(eps);
            let (m0, m1) = (ma.w.eval(r).unwrap(), ma.psi.eval(r).unwrap());
            aerr = aerr.max((na0 - m0 * mode.beta).norm()).max((na1 - m1 * mode.beta).norm());
            ascale = ascale.max(na0.norm()).max(na1.norm()).max(m1.norm());
        }
        assert!(err < 1e-8 * scale, "(ε, m, j) = ({eps}, {m}, {j}): {err} / {scale}");
        assert!(aerr < 1e-8 * ascale, "adjoint (ε, m, j) = ({eps}, {m}, {j}): {aerr} / {ascale}");
    }
}

#[test]
fn biorthogonality_and_normalization() {
    let grid = RadialGrid::<f64>::new(200).unwrap();
    for eps in [1e-3, 1.0] {
        let p = params(eps, rc(eps));
        for m in [0, 3, -3, 6, -6] {
            let modes: Vec<_> = (1..=10).map(|j| build_mode_on(m, j, &p, &grid).unwrap()).collect();
            let fs: Vec<_> = modes.iter().map(|md| md.field().sample(&grid).unwrap()).collect();
            let ms: Vec<_> = modes.iter().map(|md| md.adjoint().apply_m(eps).sample(&grid).unwrap()).collect();
            for i in 0..10 {
                for j in 0..10 {
                    let v = inner_product(&fs[i], &ms[j], &grid);
                    if i == j {
                        assert!((v - 1.0).norm() < 1e-12);
                    } else {
                        let bound = crate::field::norm(&fs[i], &grid) * crate::field::norm(&ms[j], &grid);
                        assert!(v.norm() < 1e-8 * bound, "ε = {eps}, m = {m}, ({i}, {j}): {v}");
                    }
                }
            }
        }
    }
}

#[test]
fn critical_mode_against_axisymmetric_adjoints() {
    let grid = RadialGrid::<f64>::new(200).unwrap();
    let p = params(0.01, rc(0.01));
    let f = build_mode_on(3, 1, &p, &grid).unwrap().field().sample(&grid).unwrap();
    for j in 1..=5 {
        let a = build_mode_on(0, j, &p, &grid).unwrap().adjoint().apply_m(0.01).sample(&grid).unwrap();
        assert_eq!(inner_product(&f, &a, &grid), C::new(0.0, 0.0));
    }
}

#[test]
fn negative_wavenumber_mode_is_the_conjugate() {
    let p = params(0.02, 11.5);
    for j in [1, 3] {
        let a = build_mode(3, j, &p).unwrap();
        let b = build_mode(-3, j, &p).unwrap();
        for k in 0..=20 {
            let r = 0.05 * f64::from(k);
            for (x, y) in [(&a.w, &b.w), (&a.psi, &b.psi), (&a.w_adj, &b.w_adj), (&a.psi_adj, &b.psi_adj)] {
                assert!((x.eval(r).unwrap().conj() - y.eval(r).unwrap()).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn newtonian_nonaxisymmetric_mode_is_degenerate() {
    let p = params(0.0, 10.0);
    assert!(matches!(build_mode(3, 1, &p), Err(Error::DegenerateNullSpace(_))));
}

#[test]
fn single_precision_critical_constant() {
    let (k, m): (f32, u32) = critical_constant().unwrap();
    assert_eq!(m, 3);
    assert!((k - 4.124_32).abs() < 1e-3);
}
