use crate::error::{Error, Result};
use crate::linstab::{build_mode, solve_beta, FluidParams, SpectralMode};
use crate::scalar::{cx, Cx, Real};

/// Tensor grid of radii and angles on the unit disk.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarGrid<T> {
    pub r: Vec<T>,
    pub theta: Vec<T>,
}

impl<T: Real> PolarGrid<T> {
    /// `nr` radii uniform on `[0, 1]` and `ntheta` angles uniform on `[0, 2π)`.
    pub fn uniform(nr: usize, ntheta: usize) -> Result<Self> {
        if nr < 2 || ntheta < 1 {
            return Err(Error::InvalidParameter("polar grid needs nr >= 2 and ntheta >= 1".into()));
        }
        let r = (0..nr).map(|i| T::from_usize(i).unwrap() / T::from_usize(nr - 1).unwrap()).collect();
        let two_pi = T::lit(2.0) * T::PI();
        let theta = (0..ntheta)
            .map(|k| two_pi * T::from_usize(k).unwrap() / T::from_usize(ntheta).unwrap())
            .collect();
        Ok(Self { r, theta })
    }
}

/// Real fields sampled on a [`PolarGrid`], row-major in `r` then `θ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarField<T> {
    pub r: Vec<T>,
    pub theta: Vec<T>,
    pub w: Vec<T>,
    pub psi: Vec<T>,
}

impl<T: Real> PolarField<T> {
    pub fn at(&self, i: usize, k: usize) -> (T, T) {
        let idx = i * self.theta.len() + k;
        (self.w[idx], self.psi[idx])
    }
}

/// Leading-order bifurcated solution
/// `2√(−β/Re A) Re(e^{iωt} e^{3iθ} φ_{3,1}(r))` with `ω = 2π/T`,
/// `T = 2π Re A/(Im A β)`.
#[derive(Clone, Debug)]
pub struct BifurcatedSolution<T: Real> {
    pub params: FluidParams<T>,
    pub a: Cx<T>,
    pub beta: T,
    pub amplitude: T,
    /// `2π/T`; zero when `Im A = 0`.
    pub frequency: T,
    pub mode: SpectralMode<T>,
}

impl<T: Real> BifurcatedSolution<T> {
    pub fn new(epsilon: T, reynolds: T, a: Cx<T>) -> Result<Self> {
        let params = FluidParams::new(epsilon, reynolds)?;
        let beta = solve_beta(3, 1, &params)?;
        if !(beta * a.re < T::zero()) {
            return Err(Error::InconsistentSigns(format!(
                "real amplitude needs β₃₁ Re A < 0 (β₃₁ = {beta:e}, Re A = {:e})",
                a.re
            )));
        }
        let mode = build_mode(3, 1, &params)?;
        Ok(Self {
            params,
            a,
            beta,
            amplitude: T::lit(2.0) * (-beta / a.re).sqrt(),
            frequency: a.im * beta / a.re,
            mode,
        })
    }

    /// `T = 2π/ω`; infinite when `Im A = 0`.
    pub fn period(&self) -> T {
        T::lit(2.0) * T::PI() / self.frequency
    }

    /// Samples `(w_per, ψ_per)` at time `t`.
    pub fn field(&self, t: T, grid: &PolarGrid<T>) -> Result<PolarField<T>> {
        let m = T::from_i32(self.mode.m).unwrap();
        let mut w = Vec::with_capacity(grid.r.len() * grid.theta.len());
        let mut psi = Vec::with_capacity(w.capacity());
        let phase_t = self.frequency * t;
        for &r in &grid.r {
            let wr = self.mode.w.eval(r)?;
            let pr = self.mode.psi.eval(r)?;
            for &th in &grid.theta {
                let arg = phase_t + m * th;
                let e = cx(arg.cos(), arg.sin());
                w.push(self.amplitude * (e * wr).re);
                psi.push(self.amplitude * (e * pr).re);
            }
        }
        Ok(PolarField { r: grid.r.clone(), theta: grid.theta.clone(), w, psi })
    }
}

/// [`BifurcatedSolution::field`] in one call.
pub fn periodic_field<T: Real>(
    t: T,
    grid: &PolarGrid<T>,
    epsilon: T,
    reynolds: T,
    a: Cx<T>,
) -> Result<PolarField<T>> {
    BifurcatedSolution::new(epsilon, reynolds, a)?.field(t, grid)
}
