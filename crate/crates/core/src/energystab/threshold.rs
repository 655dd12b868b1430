use rayon::prelude::*;

use crate::energystab::cubic::{cubic_roots, CubicRoots};
use crate::energystab::determinant::{el_determinant_normalized, el_matrix, i_value_and_deriv};
use crate::error::{Error, Result};
use crate::linstab::{critical_reynolds, FluidParams};
use crate::quadrature::RadialGrid;
use crate::roots::brent;
use crate::scalar::{cx, re, Cx, Real};
use crate::specfun::bessel_j_zero;

/// Largest azimuthal order handled by [`solve_rm`].
pub const MAX_ENERGY_ORDER: u32 = 8;
/// Default `m` window of [`energy_threshold`].
pub const DEFAULT_M_MAX: u32 = 8;
/// Reynolds-number scan window and panel count of [`solve_rm`].
pub const SCAN_WINDOW: (f64, f64) = (0.5, 60.0);
pub const SCAN_PANELS: usize = 600;

/// `R_m(ε)`: the smallest positive root of the Euler–Lagrange determinant.
pub fn solve_rm<T: Real>(m: u32, epsilon: T) -> Result<T> {
    if m == 0 || m > MAX_ENERGY_ORDER {
        return Err(Error::Range(format!("energy threshold supports 1 <= m <= {MAX_ENERGY_ORDER}, got {m}")));
    }
    let (lo, hi) = (T::lit(SCAN_WINDOW.0), T::lit(SCAN_WINDOW.1));
    let h = (hi - lo) / T::from_usize(SCAN_PANELS).unwrap();
    let f = |r: T| el_determinant_normalized(m, r, epsilon);
    let mut a = lo;
    let mut fa = f(a)?;
    for i in 1..=SCAN_PANELS {
        let b = lo + h * T::from_usize(i).unwrap();
        let fb = f(b)?;
        if fa == T::zero() {
            return Ok(a);
        }
        if (fa > T::zero()) != (fb > T::zero()) {
            return brent(f, a, b, b * T::lit(1e-12));
        }
        a = b;
        fa = fb;
    }
    Err(Error::RootNotFound(format!(
        "no sign change of the energy determinant on R ∈ ({}, {}] for m = {m}, ε = {epsilon}",
        SCAN_WINDOW.0, SCAN_WINDOW.1
    )))
}

/// `η₁ = α²_{0,1}`, the first Dirichlet eigenvalue of `−Δ` on the unit disk.
pub fn first_dirichlet_eigenvalue<T: Real>() -> Result<T> {
    let a = bessel_j_zero::<T>(0, 1)?;
    Ok(a * a)
}

/// `c_R = 2Rη₁/(1 + εη₁) · (1/R² − 1/R_E²)`.
pub fn decay_rate<T: Real>(params: &FluidParams<T>, r_e: T) -> Result<T> {
    if !(r_e > T::zero()) {
        return Err(Error::InvalidParameter(format!("R_E must be > 0, got {r_e}")));
    }
    let eta = first_dirichlet_eigenvalue::<T>()?;
    let r = params.reynolds;
    Ok(T::lit(2.0) * r * eta / (T::one() + params.epsilon * eta) * (T::one() / (r * r) - T::one() / (r_e * r_e)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyReport<T: Real> {
    pub epsilon: T,
    /// `(m, R_m)` for `m = 1..=m_max`.
    pub per_m: Vec<(u32, T)>,
    pub r_e: T,
    pub minimizing_m: u32,
    /// `R_c(ε)`, absent at `ε = 0`.
    pub r_c: Option<T>,
    /// Set when the minimum sits at the edge of the `m` window.
    pub warning: Option<String>,
}

impl<T: Real> EnergyReport<T> {
    /// [`decay_rate`] at Reynolds number `r`.
    pub fn decay_rate_at(&self, r: T) -> Result<T> {
        decay_rate(&FluidParams::new(self.epsilon, r)?, self.r_e)
    }

    pub fn r_m(&self, m: u32) -> Option<T> {
        self.per_m.iter().find(|(k, _)| *k == m).map(|(_, r)| *r)
    }
}

/// `R_E(ε) = min_{1 <= m <= m_max} R_m(ε)`.
pub fn energy_threshold<T: Real>(epsilon: T, m_max: u32) -> Result<EnergyReport<T>> {
    if !(5..=MAX_ENERGY_ORDER).contains(&m_max) {
        return Err(Error::Range(format!("m_max must lie in 5..={MAX_ENERGY_ORDER}, got {m_max}")));
    }
    let per_m = (1..=m_max)
        .into_par_iter()
        .map(|m| solve_rm(m, epsilon).map(|r| (m, r)))
        .collect::<Result<Vec<_>>>()?;
    let (minimizing_m, r_e) = per_m
        .iter()
        .copied()
        .fold((0, T::infinity()), |best, (m, r)| if r < best.1 { (m, r) } else { best });
    let warning = (minimizing_m == m_max).then(|| {
        format!("R_E attained at the window edge m = {m_max}; a larger m_max may lower it")
    });
    let r_c = if epsilon > T::zero() { Some(critical_reynolds(epsilon)?.0) } else { None };
    Ok(EnergyReport { epsilon, per_m, r_e, minimizing_m, r_c, warning })
}

/// `ε` in `[lo, hi]` where `R_{m_a}(ε) = R_{m_b}(ε)`.
pub fn threshold_crossing<T: Real>(m_a: u32, m_b: u32, lo: T, hi: T) -> Result<T> {
    brent(|e| Ok(solve_rm(m_a, e)? - solve_rm(m_b, e)?), lo, hi, T::lit(1e-9))
}

/// Euler–Lagrange eigenfunction `ψ = Σ c_k I_m(√ξ_k r)`, `w = Σ d_k I_m(√ξ_k r)`
/// with `d_k = −i(mR²/2)(ξ_k⁻¹ − ε)c_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ElMode<T: Real> {
    pub m: u32,
    pub reynolds: T,
    pub epsilon: T,
    pub roots: CubicRoots<T>,
    pub c: [Cx<T>; 3],
    pub d: [Cx<T>; 3],
}

/// Energy integrals `I₁ = ‖∇w‖² + ‖Δψ‖²` and `I₂ = Re⟨ψ_θ, w − εΔw⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyIntegrals<T> {
    pub i1: T,
    pub i2: T,
}

impl<T: Real> EnergyIntegrals<T> {
    /// `−I₁/R + R I₂`, the growth rate of the energy functional.
    pub fn quadratic_form(&self, reynolds: T) -> T {
        -self.i1 / reynolds + reynolds * self.i2
    }
}

impl<T: Real> ElMode<T> {
    /// Eigenfunction at a root `R` of the determinant.
    pub fn new(m: u32, reynolds: T, epsilon: T) -> Result<Self> {
        let roots = cubic_roots(m, reynolds, epsilon)?;
        let mat = el_matrix(m, &roots)?;
        let c = crate::linstab::null_vector(mat)?;
        let xis = roots.as_array();
        let half = T::from_u32(m).unwrap() * reynolds * reynolds / T::lit(2.0);
        let d = [0, 1, 2].map(|k| cx(T::zero(), -half) * (xis[k].inv() - re(epsilon)) * c[k]);
        Ok(Self { m, reynolds, epsilon, roots, c, d })
    }

    /// `(w, w', Δw, ψ, Δψ)` at radius `r`.
    pub fn eval(&self, r: T) -> Result<[Cx<T>; 5]> {
        let xis = self.roots.as_array();
        let mut out = [re(T::zero()); 5];
        for k in 0..3 {
            let s = xis[k].sqrt();
            let s = if k == 2 { xis[1].sqrt().conj() } else { s };
            let (i, di) = i_value_and_deriv(self.m, s * r)?;
            out[0] = out[0] + self.d[k] * i;
            out[1] = out[1] + self.d[k] * s * di;
            out[2] = out[2] + self.d[k] * xis[k] * i;
            out[3] = out[3] + self.c[k] * i;
            out[4] = out[4] + self.c[k] * xis[k] * i;
        }
        Ok(out)
    }

    /// `I₁` and `I₂` by radial quadrature (the common factor `2π` kept).
    pub fn integrals(&self, grid: &RadialGrid<T>) -> Result<EnergyIntegrals<T>> {
        let mf = T::from_u32(self.m).unwrap();
        let (mut i1, mut i2) = (T::zero(), re(T::zero()));
        for (idx, &r) in grid.r.iter().enumerate() {
            let [w, dw, lw, psi, lpsi] = self.eval(r)?;
            let grad = dw.norm_sqr() + mf * mf * w.norm_sqr() / (r * r);
            i1 = i1 + (grad + lpsi.norm_sqr()) * grid.rw[idx];
            let psi_theta = cx(T::zero(), mf) * psi;
            i2 = i2 + psi_theta * (w - lw * self.epsilon).conj() * grid.rw[idx];
        }
        let tau = T::lit(2.0) * T::PI();
        Ok(EnergyIntegrals { i1: i1 * tau, i2: i2.re * tau })
    }
}
