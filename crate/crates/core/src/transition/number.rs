use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{inner_product, AzimuthalField, SampledField};
use crate::linstab::{build_mode_on, critical_reynolds, FluidParams, SpectralMode};
use crate::quadrature::{RadialGrid, DEFAULT_NODES, DOUBLING_REJECT};
use crate::scalar::{re, Cx, Real};
use crate::transition::ops::{bilinear_h, bilinear_hs, FieldSamples, NonlinearForm};

/// Largest supported truncation order.
pub const MAX_TRUNCATION: usize = 20;

/// Relative tolerance below which `Re A` counts as zero.
pub const DEGENERATE_TOL: f64 = 1e-10;

/// Transition type from the sign of `Re A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// `Re A < 0`: continuous transition to an attracting limit cycle.
    TypeI,
    /// `Re A > 0`: catastrophic transition, the bifurcated cycle repels.
    TypeII,
    Degenerate,
}

impl Classification {
    pub fn of<T: Real>(a: Cx<T>) -> Self {
        if a.re.abs() < T::lit(DEGENERATE_TOL) * a.norm() || a.norm() == T::zero() {
            Classification::Degenerate
        } else if a.re < T::zero() {
            Classification::TypeI
        } else {
            Classification::TypeII
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Classification::TypeI => "Type-I",
            Classification::TypeII => "Type-II",
            Classification::Degenerate => "degenerate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransitionOptions<T: Real> {
    pub nodes: usize,
    pub form: NonlinearForm,
    /// Factor applied to the critical mode `φ_{3,1}` (its adjoint is left alone).
    pub critical_scale: Cx<T>,
    /// Recompute every term on twice the nodes and reject changes above 1e-8.
    pub doubling_check: bool,
}

impl<T: Real> Default for TransitionOptions<T> {
    fn default() -> Self {
        Self {
            nodes: DEFAULT_NODES,
            form: NonlinearForm::default(),
            critical_scale: re(T::one()),
            doubling_check: true,
        }
    }
}

/// Center-manifold coefficients and interaction terms for radial index `j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InteractionTerm<T: Real> {
    pub j: usize,
    pub beta_0: T,
    pub beta_6: T,
    /// `Φ̃_{0,j}`.
    pub phi_0: Cx<T>,
    /// `Φ̃_{6,j}`.
    pub phi_6: Cx<T>,
    /// `A_{0,j}`.
    pub a_0: Cx<T>,
    /// `A_{6,j}`.
    pub a_6: Cx<T>,
}

/// `⟨φ, Mφ*⟩`.
fn pairing<T: Real>(mode: &SpectralMode<T>, epsilon: T, grid: &RadialGrid<T>) -> Result<Cx<T>> {
    let f = mode.field().sample(grid)?;
    let ma = mode.adjoint().apply_m(epsilon).sample(grid)?;
    Ok(inner_product(&f, &ma, grid))
}

/// The critical mode at `R_c(ε)` with the sampled quadratic forcings.
pub struct TransitionContext<T: Real> {
    pub params: FluidParams<T>,
    pub form: NonlinearForm,
    pub grid: RadialGrid<T>,
    pub critical: SpectralMode<T>,
    crit: FieldSamples<T>,
    crit_bar: FieldSamples<T>,
    crit_adj: SampledField<T>,
    crit_denom: Cx<T>,
    forcing_0: SampledField<T>,
    forcing_6: SampledField<T>,
}

impl<T: Real> TransitionContext<T> {
    pub fn new(epsilon: T, options: &TransitionOptions<T>) -> Result<Self> {
        let (rc, mc) = critical_reynolds(epsilon)?;
        let params = FluidParams::new(epsilon, rc)?;
        let grid = RadialGrid::new(options.nodes)?;
        let base = build_mode_on(mc as i32, 1, &params, &grid)?;
        let critical = SpectralMode {
            w: base.w.scaled(options.critical_scale),
            psi: base.psi.scaled(options.critical_scale),
            ..base
        };
        Self::with_mode(params, critical, options.form, grid)
    }

    /// Context around an explicit critical mode.
    pub fn with_mode(
        params: FluidParams<T>,
        critical: SpectralMode<T>,
        form: NonlinearForm,
        grid: RadialGrid<T>,
    ) -> Result<Self> {
        let eps = params.epsilon;
        let field = critical.field();
        let crit = FieldSamples::new(&field, eps, &grid.r)?;
        let crit_bar = crit.conj();
        let crit_adj = critical.adjoint().sample(&grid)?;
        let crit_denom = pairing(&critical, eps, &grid)?;
        if crit_denom.norm() < T::lit(1e-12) {
            return Err(Error::NearZeroDenominator(format!("critical mode has ⟨φ, Mφ*⟩ = {crit_denom}")));
        }
        let forcing_0 = bilinear_hs(&crit, &crit_bar, eps, form, &grid.r)?;
        let forcing_6 = bilinear_h(&crit, &crit, eps, form, &grid.r)?;
        Ok(Self { params, form, grid, critical, crit, crit_bar, crit_adj, crit_denom, forcing_0, forcing_6 })
    }

    pub fn epsilon(&self) -> T {
        self.params.epsilon
    }

    /// `(Φ̃_{0,j}, Φ̃_{6,j})`.
    pub fn cm_coefficients(&self, j: usize) -> Result<(Cx<T>, Cx<T>)> {
        let t = self.interaction(j)?;
        Ok((t.phi_0, t.phi_6))
    }

    fn projection(&self, forcing: &SampledField<T>, mode: &SpectralMode<T>) -> Result<(Cx<T>, SampledField<T>)> {
        let adj = mode.adjoint().sample(&self.grid)?;
        let denom = pairing(mode, self.epsilon(), &self.grid)? * -mode.beta;
        if denom.norm() < T::lit(1e-12) {
            return Err(Error::NearZeroDenominator(format!(
                "β⟨φ, Mφ*⟩ = {denom} for mode (m, j) = ({}, {})",
                mode.m, mode.j
            )));
        }
        Ok((inner_product(forcing, &adj, &self.grid) / denom, adj))
    }

    /// All coefficients and interaction terms for radial index `j`.
    pub fn interaction(&self, j: usize) -> Result<InteractionTerm<T>> {
        let eps = self.epsilon();
        let m6 = 2 * self.critical.m;
        let mode_0 = build_mode_on(0, j, &self.params, &self.grid)?;
        let mode_6 = build_mode_on(m6, j, &self.params, &self.grid)?;
        let (phi_0, _) = self.projection(&self.forcing_0, &mode_0)?;
        let (phi_6, _) = self.projection(&self.forcing_6, &mode_6)?;
        let s0 = FieldSamples::new(&mode_0.field(), eps, &self.grid.r)?;
        let s6 = FieldSamples::new(&mode_6.field(), eps, &self.grid.r)?;
        let h0 = bilinear_hs(&self.crit, &s0, eps, self.form, &self.grid.r)?;
        let h6 = bilinear_hs(&self.crit_bar, &s6, eps, self.form, &self.grid.r)?;
        let a_0 = phi_0 * inner_product(&h0, &self.crit_adj, &self.grid) / self.crit_denom;
        let a_6 = phi_6 * inner_product(&h6, &self.crit_adj, &self.grid) / self.crit_denom;
        Ok(InteractionTerm { j, beta_0: mode_0.beta, beta_6: mode_6.beta, phi_0, phi_6, a_0, a_6 })
    }

    /// `⟨H_s(x, Φ), φ*⟩/⟨φ, Mφ*⟩` with `x = zφ + z̄φ̄` and
    /// `Φ = Σ_j (|z|²Φ̃_{0,j}φ_{0,j} + z²Φ̃_{6,j}φ_{6,j} + c.c. of the last)`,
    /// summing every wavenumber pair without preselection.
    pub fn reduced_coefficient_direct(&self, terms: &[InteractionTerm<T>], z: Cx<T>) -> Result<Cx<T>> {
        let eps = self.epsilon();
        let x = [self.crit.scaled(z), self.crit_bar.scaled(z.conj())];
        let m6 = 2 * self.critical.m;
        let mut big: Vec<FieldSamples<T>> = Vec::new();
        for t in terms {
            let f0 = build_mode_on(0, t.j, &self.params, &self.grid)?.field();
            let f6 = build_mode_on(m6, t.j, &self.params, &self.grid)?.field();
            let s0 = FieldSamples::new(&f0, eps, &self.grid.r)?;
            let s6 = FieldSamples::new(&f6, eps, &self.grid.r)?;
            big.push(s0.scaled(t.phi_0 * z.norm_sqr()));
            let c6 = t.phi_6 * z * z;
            big.push(s6.scaled(c6));
            big.push(s6.conj().scaled(c6.conj()));
        }
        let mut total = re(T::zero());
        for a in &x {
            for b in &big {
                let h = bilinear_hs(a, b, eps, self.form, &self.grid.r)?;
                total = total + inner_product(&h, &self.crit_adj, &self.grid);
            }
        }
        Ok(total / self.crit_denom)
    }
}

/// Interaction terms, truncations `A^N`, and limit-cycle coefficients at `R_c(ε)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionReport<T: Real> {
    pub epsilon: T,
    pub reynolds: T,
    pub truncation: usize,
    pub form: NonlinearForm,
    pub terms: Vec<InteractionTerm<T>>,
    /// `A^n` for `n = 1..N`.
    pub partial_sums: Vec<Cx<T>>,
    pub a_n: Cx<T>,
    pub b_n: T,
    /// `Re(A^n)/|Re(A¹)|` for `n = 1..N`.
    pub scaled_profile: Vec<T>,
    /// `B^n` for `n = 1..N`.
    pub b_profile: Vec<T>,
    pub classification: Classification,
    /// `2√(1/|Re A|)`.
    pub amplitude_coeff: T,
    /// `2π Re A/Im A`; the period is this divided by `β_{3,1}`.
    pub period_coeff: T,
    /// Largest relative change of any term under node doubling (0 when skipped).
    pub quadrature_change: T,
}

impl<T: Real> TransitionReport<T> {
    pub fn terms_0(&self) -> Vec<Cx<T>> {
        self.terms.iter().map(|t| t.a_0).collect()
    }

    pub fn terms_6(&self) -> Vec<Cx<T>> {
        self.terms.iter().map(|t| t.a_6).collect()
    }

    /// `|A^N − A¹|/|A^N|`.
    pub fn leading_term_error(&self) -> T {
        (self.a_n - self.partial_sums[0]).norm() / self.a_n.norm()
    }

    fn assemble(
        epsilon: T,
        reynolds: T,
        form: NonlinearForm,
        terms: Vec<InteractionTerm<T>>,
        quadrature_change: T,
    ) -> Self {
        let mut partial_sums = Vec::with_capacity(terms.len());
        let mut b_profile = Vec::with_capacity(terms.len());
        let (mut acc, mut s0, mut s6) = (re(T::zero()), T::zero(), T::zero());
        for t in &terms {
            acc = acc + t.a_0 + t.a_6;
            s0 = s0 + t.a_0.re;
            s6 = s6 + t.a_6.re;
            partial_sums.push(acc);
            b_profile.push(s6 / s0);
        }
        let a1 = partial_sums[0].re.abs();
        let scaled_profile = partial_sums.iter().map(|a| a.re / a1).collect();
        let a_n = acc;
        let two = T::lit(2.0);
        Self {
            epsilon,
            reynolds,
            truncation: terms.len(),
            form,
            partial_sums,
            a_n,
            b_n: *b_profile.last().unwrap(),
            scaled_profile,
            b_profile,
            classification: Classification::of(a_n),
            amplitude_coeff: two * (T::one() / a_n.re.abs()).sqrt(),
            period_coeff: two * T::PI() * a_n.re / a_n.im,
            quadrature_change,
            terms,
        }
    }
}

fn interaction_terms<T: Real>(ctx: &TransitionContext<T>, n: usize) -> Result<Vec<InteractionTerm<T>>> {
    (1..=n).into_par_iter().map(|j| ctx.interaction(j)).collect()
}

fn relative_change<T: Real>(a: Cx<T>, b: Cx<T>, scale: T) -> T {
    (a - b).norm() / scale
}

/// Transition number at `R_c(ε)` truncated at `N` with default options.
pub fn transition_number<T: Real>(epsilon: T, truncation: usize) -> Result<TransitionReport<T>> {
    transition_number_with(epsilon, truncation, &TransitionOptions::default())
}

pub fn transition_number_with<T: Real>(
    epsilon: T,
    truncation: usize,
    options: &TransitionOptions<T>,
) -> Result<TransitionReport<T>> {
    if truncation == 0 || truncation > MAX_TRUNCATION {
        return Err(Error::Range(format!("truncation must lie in 1..={MAX_TRUNCATION}, got {truncation}")));
    }
    if !(epsilon > T::zero()) || !epsilon.is_finite() {
        return Err(Error::Domain(format!("transition analysis needs ε > 0, got {epsilon}")));
    }
    let ctx = TransitionContext::new(epsilon, options)?;
    let terms = interaction_terms(&ctx, truncation)?;
    let mut change = T::zero();
    if options.doubling_check {
        let fine = TransitionContext::new(epsilon, &TransitionOptions { nodes: 2 * options.nodes, ..*options })?;
        let fine_terms = interaction_terms(&fine, truncation)?;
        let scale = terms.iter().map(|t| t.a_0.norm() + t.a_6.norm()).fold(T::zero(), T::max);
        for (a, b) in terms.iter().zip(&fine_terms) {
            change = change.max(relative_change(a.a_0, b.a_0, scale)).max(relative_change(a.a_6, b.a_6, scale));
        }
        if change > T::lit(DOUBLING_REJECT) {
            return Err(Error::NonConvergence(format!(
                "interaction terms change by {change:e} under node doubling ({} -> {})",
                options.nodes,
                2 * options.nodes
            )));
        }
    }
    Ok(TransitionReport::assemble(epsilon, ctx.params.reynolds, options.form, terms, change))
}

/// Samples an [`AzimuthalField`] together with its derived profiles.
pub fn field_samples<T: Real>(field: &AzimuthalField<T>, epsilon: T, grid: &RadialGrid<T>) -> Result<FieldSamples<T>> {
    FieldSamples::new(field, epsilon, &grid.r)
}
