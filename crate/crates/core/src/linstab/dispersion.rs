use crate::error::{Error, Result};
use crate::linstab::FluidParams;
use crate::roots::brent;
use crate::scalar::{i_pow, Cx, Real};
use crate::specfun::{
    bessel_j_reduced, bessel_j_reduced_complex, cross_product_reduced, BesselZeroTable,
};

/// Largest azimuthal order handled by the dispersion solvers.
pub const MAX_ORDER: u32 = 20;

/// `(λ, μ) = (±√ε m R − β)/(1/R + εβ)`.
pub fn lambda_mu<T: Real>(m: u32, beta: T, params: &FluidParams<T>) -> Result<(T, T)> {
    let d = params.reynolds.recip() + params.epsilon * beta;
    if d.abs() < T::lit(1e-14) {
        return Err(Error::SingularDenominator(format!(
            "1/R + εβ = {d:e} at β = {beta}"
        )));
    }
    let a = params.coupling(m);
    Ok(((a - beta) / d, (-a - beta) / d))
}

/// `G(λ, μ) = E_m(λ)E_{m+1}(μ) + E_m(μ)E_{m+1}(λ)` and its natural scale
/// `(|E_m(λ)| + |E_{m+1}(λ)|)(|E_m(μ)| + |E_{m+1}(μ)|)`.
fn reduced_pair<T: Real>(m: u32, lambda: T, mu: T) -> Result<(T, T)> {
    let (el, el1) = (bessel_j_reduced(m, lambda)?, bessel_j_reduced(m + 1, lambda)?);
    let (eu, eu1) = (bessel_j_reduced(m, mu)?, bessel_j_reduced(m + 1, mu)?);
    let scale = (el.abs() + el1.abs()) * (eu.abs() + eu1.abs());
    Ok((el * eu1 + eu * el1, scale))
}

/// Dispersion function `√λ J_m(√λ)J_{m+1}(√μ) + √μ J_m(√μ)J_{m+1}(√λ)`, made
/// real by dividing out the unit phase `i^{m+1}` of each negative argument.
pub fn dispersion<T: Real>(m: u32, beta: T, params: &FluidParams<T>) -> Result<T> {
    let (l, u) = lambda_mu(m, beta, params)?;
    if l == T::zero() || u == T::zero() {
        return Err(Error::Domain(format!("dispersion needs λ, μ ≠ 0 (λ = {l}, μ = {u})")));
    }
    let (g, _) = reduced_pair(m, l, u)?;
    Ok((l * u).abs().powf(T::from_u32(m + 1).unwrap() * T::lit(0.5)) * g)
}

/// Regular form `G = E_m(λ)E_{m+1}(μ) + E_m(μ)E_{m+1}(λ)` with `E_m(s) =
/// J_m(√s)/(√s)^m`; `dispersion = |λμ|^{(m+1)/2} G`, with no trivial roots.
pub fn dispersion_reduced<T: Real>(m: u32, beta: T, params: &FluidParams<T>) -> Result<T> {
    let (l, u) = lambda_mu(m, beta, params)?;
    Ok(reduced_pair(m, l, u)?.0)
}

/// `(G, scale)`: the regular form and the product of the factor magnitudes.
pub fn dispersion_reduced_scaled<T: Real>(m: u32, beta: T, params: &FluidParams<T>) -> Result<(T, T)> {
    let (l, u) = lambda_mu(m, beta, params)?;
    reduced_pair(m, l, u)
}

/// Regular form `G` at complex `β`.
pub fn dispersion_reduced_complex<T: Real>(
    m: u32,
    beta: Cx<T>,
    params: &FluidParams<T>,
) -> Result<Cx<T>> {
    let d = beta * params.epsilon + params.reynolds.recip();
    if d.norm() < T::lit(1e-14) {
        return Err(Error::SingularDenominator(format!("1/R + εβ = {d} at β = {beta}")));
    }
    let a = params.coupling(m);
    let l = (-beta + a) / d;
    let u = (-beta - a) / d;
    Ok(bessel_j_reduced_complex(m, l)? * bessel_j_reduced_complex(m + 1, u)?
        + bessel_j_reduced_complex(m, u)? * bessel_j_reduced_complex(m + 1, l)?)
}

/// Unit phase relating the complex dispersion expression to [`dispersion`].
pub fn dispersion_phase<T: Real>(m: u32, lambda: T, mu: T) -> Cx<T> {
    let k = i64::from(lambda < T::zero()) + i64::from(mu < T::zero());
    i_pow(k * (m as i64 + 1))
}

/// Smallest positive root of `I_m(√λ)J_m'(√λ) − J_m(√λ)I_m'(√λ)`.
pub fn solve_lambda_m1<T: Real>(m: u32) -> Result<T> {
    if m == 0 || m > MAX_ORDER {
        return Err(Error::Range(format!("λ_(m,1) supported for 1 <= m <= {MAX_ORDER}, got {m}")));
    }
    let f = |x: T| cross_product_reduced(m, x * x);
    let x_up = lambda_upper_bound::<T>(m).sqrt().sqrt();
    let h = T::lit(0.05);
    let mut x = h;
    let mut fx = f(x)?;
    while x < x_up {
        let xn = x + h;
        let fxn = f(xn)?;
        if (fx > T::zero()) != (fxn > T::zero()) {
            let root = brent(f, x, xn, T::epsilon() * xn)?;
            return Ok(root * root);
        }
        x = xn;
        fx = fxn;
    }
    Err(Error::Bracketing(format!(
        "no sign change of the m = {m} cross product below the analytic bound λ < {}",
        x_up * x_up
    )))
}

/// `2^4 (m+1)(m+2)(m+3)√((m+4)(m+5)) / √(5m+15)`, the stated lower bound on `λ²_{m,1}`.
pub fn lambda_lower_bound<T: Real>(m: u32) -> T {
    let f = |k: u32| T::from_u32(m + k).unwrap();
    T::lit(16.0) * f(1) * f(2) * f(3) * (f(4) * f(5)).sqrt() / (T::lit(5.0) * f(0) + T::lit(15.0)).sqrt()
}

/// `2^4 (m+1)(m+2)(m+3)(m+4)(m+5) / (5m+17)`, the upper bound on `λ²_{m,1}`.
pub fn lambda_upper_bound<T: Real>(m: u32) -> T {
    let f = |k: u32| T::from_u32(m + k).unwrap();
    T::lit(16.0) * f(1) * f(2) * f(3) * f(4) * f(5) / (T::lit(5.0) * f(0) + T::lit(17.0))
}

/// One row of [`verify_lambda_bounds`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaBound<T> {
    pub m: u32,
    /// Lower bound on `λ²_{m,1}`.
    pub lower: T,
    pub lambda: T,
    /// Upper bound on `λ²_{m,1}`.
    pub upper: T,
}

impl<T: Real> LambdaBound<T> {
    pub fn lower_holds(&self) -> bool {
        self.lower < self.lambda * self.lambda
    }

    pub fn upper_holds(&self) -> bool {
        self.lambda * self.lambda < self.upper
    }
}

/// Evaluates both bounds on `λ²_{m,1}` for `m = 1..=m_max`.
pub fn verify_lambda_bounds<T: Real>(m_max: u32) -> Result<Vec<LambdaBound<T>>> {
    if m_max == 0 || m_max > MAX_ORDER {
        return Err(Error::Range(format!("m_max must lie in 1..={MAX_ORDER}, got {m_max}")));
    }
    (1..=m_max)
        .map(|m| {
            Ok(LambdaBound {
                m,
                lower: lambda_lower_bound(m),
                lambda: solve_lambda_m1(m)?,
                upper: lambda_upper_bound(m),
            })
        })
        .collect()
}

/// `min_m √(λ_{m,1}/m)` over `m = 1..=6`, with the minimizing `m`.
///
/// Orders `m >= 7` cannot win: there the lower bound on `λ²_{m,1}` holds and
/// already exceeds the `m = 3` value.
pub fn critical_constant<T: Real>() -> Result<(T, u32)> {
    let mut best: Option<(T, u32)> = None;
    for m in 1..=6 {
        let k = (solve_lambda_m1::<T>(m)? / T::from_u32(m).unwrap()).sqrt();
        if best.map_or(true, |(b, _)| k < b) {
            best = Some((k, m));
        }
    }
    Ok(best.expect("non-empty range"))
}

/// `R_c(ε) = ε^{−1/4} min_m √(λ_{m,1}/m)` and the critical order `m_c`.
pub fn critical_reynolds<T: Real>(epsilon: T) -> Result<(T, u32)> {
    if !(epsilon > T::zero()) || !epsilon.is_finite() {
        return Err(Error::Domain(format!(
            "critical Reynolds number needs ε > 0 (the flow is linearly stable at ε = 0), got {epsilon}"
        )));
    }
    let (k, m) = critical_constant::<T>()?;
    Ok((k / epsilon.sqrt().sqrt(), m))
}

/// `β` on the branch parametrized by `λ ∈ (0, ∞)`.
fn beta_of_lambda<T: Real>(m: u32, lambda: T, params: &FluidParams<T>) -> T {
    let a = params.coupling(m);
    (a - lambda / params.reynolds) / (T::one() + params.epsilon * lambda)
}

fn mu_of_lambda<T: Real>(m: u32, lambda: T, params: &FluidParams<T>) -> T {
    let a = params.coupling(m);
    let p = params.reynolds.recip() + params.epsilon * a;
    lambda - T::lit(2.0) * a * (T::one() + params.epsilon * lambda) / p
}

fn g_of_x<T: Real>(m: u32, x: T, params: &FluidParams<T>) -> Result<(T, T)> {
    let l = x * x;
    reduced_pair(m, l, mu_of_lambda(m, l, params))
}

/// The `count` largest eigenvalues `β_{m,1} >= β_{m,2} >= …`.
///
/// For `m ≠ 0` the map `λ ↦ β = (√ε|m|R − λ/R)/(1 + ελ)` is a monotone
/// bijection from `(0, ∞)` onto `(−1/(εR), √ε|m|R)`, so the roots of `G` are
/// scanned in `x = √λ` and come out in descending `β`. For `m = 0` the two
/// closed-form families are merged.
pub fn beta_spectrum<T: Real>(m: i32, count: usize, params: &FluidParams<T>) -> Result<Vec<T>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let n = m.unsigned_abs();
    if n > MAX_ORDER {
        return Err(Error::Range(format!("|m| <= {MAX_ORDER} supported, got {m}")));
    }
    if n == 0 {
        return Ok(m0_spectrum(count, params)?.into_iter().map(|e| e.beta).collect());
    }
    let h = T::PI() / T::lit(64.0);
    let x_max = T::PI() * T::from_usize(2 * (count + n as usize) + 40).unwrap();
    let mut out = Vec::with_capacity(count);
    let mut x = T::zero();
    let (mut g, mut sc) = g_of_x(n, x, params)?;
    let mut prev_abs = T::infinity();
    let mut just_found = false;
    let mut k = 0u64;
    while out.len() < count {
        k += 1;
        let xn = h * T::from_u64(k).unwrap();
        if xn > x_max {
            return Err(Error::RootNotFound(format!(
                "only {} of {count} branches of m = {m} resolved for x = √λ <= {x_max}",
                out.len()
            )));
        }
        let (gn, scn) = g_of_x(n, xn, params)?;
        if (g > T::zero()) != (gn > T::zero()) {
            let root = brent(|t| Ok(g_of_x(n, t, params)?.0), x, xn, T::epsilon() * xn)?;
            out.push(beta_of_lambda(n, root * root, params));
            just_found = true;
        } else if !just_found
            && g.abs() < prev_abs && g.abs() <= gn.abs() && g.abs() < T::lit(1e-9) * sc {
            return Err(Error::DegenerateNullSpace(format!(
                "possible double root of the m = {m} dispersion near λ = {}",
                x * x
            )));
        } else {
            just_found = false;
        }
        prev_abs = g.abs();
        x = xn;
        g = gn;
        sc = scn;
    }
    Ok(out)
}

/// Eigenvalue `β_{m,j}(R)`, 1-based `j`.
pub fn solve_beta<T: Real>(m: i32, j: usize, params: &FluidParams<T>) -> Result<T> {
    if j == 0 {
        return Err(Error::Range("radial index j is 1-based".into()));
    }
    Ok(beta_spectrum(m, j, params)?[j - 1])
}

/// Which closed-form family an axisymmetric eigenvalue belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisymmetricFamily {
    /// `w = J_0(α_{0,k} r)`, `ψ = 0`.
    Vertical,
    /// `w = 0`, `ψ = J_0(α_{1,k} r) − J_0(α_{1,k})`.
    StreamFunction,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisymmetricEigen<T> {
    pub family: AxisymmetricFamily,
    /// Index `k` within its family.
    pub k: usize,
    /// The Bessel zero `α`.
    pub alpha: T,
    pub beta: T,
}

/// The `count` largest `m = 0` eigenvalues from both families, descending.
pub fn m0_spectrum<T: Real>(count: usize, params: &FluidParams<T>) -> Result<Vec<AxisymmetricEigen<T>>> {
    let r = params.reynolds;
    let e = params.epsilon;
    let beta = |a: T| -a * a / (r * (T::one() + e * a * a));
    let mut all = Vec::with_capacity(2 * count);
    for (order, family) in [(0, AxisymmetricFamily::Vertical), (1, AxisymmetricFamily::StreamFunction)] {
        let t = BesselZeroTable::<T>::new(order, count)?;
        for (i, &a) in t.zeros().iter().enumerate() {
            all.push(AxisymmetricEigen { family, k: i + 1, alpha: a, beta: beta(a) });
        }
    }
    all.sort_by(|a, b| b.beta.partial_cmp(&a.beta).expect("finite eigenvalues"));
    all.truncate(count);
    Ok(all)
}

/// `dβ_{3,1}/dR` at `R_c(ε)` by a centered difference with step `10⁻⁴ R_c`.
pub fn pes_slope<T: Real>(epsilon: T) -> Result<T> {
    let (rc, m) = critical_reynolds(epsilon)?;
    let h = T::lit(1e-4) * rc;
    let up = solve_beta(m as i32, 1, &FluidParams::new(epsilon, rc + h)?)?;
    let dn = solve_beta(m as i32, 1, &FluidParams::new(epsilon, rc - h)?)?;
    Ok((up - dn) / (T::lit(2.0) * h))
}
