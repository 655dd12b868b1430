use crate::error::{Error, Result};
use crate::roots::brent;
use crate::scalar::{cx, re, Cx, Real};

/// Roots of `p(ξ) = ξ³ + (m²R⁴/4)(1 − εξ)²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicRoots<T: Real> {
    /// The real root (always negative since `p(0) > 0`).
    pub xi1: T,
    /// Root with positive imaginary part.
    pub xi2: Cx<T>,
    /// `conj(xi2)`, bit for bit.
    pub xi3: Cx<T>,
}

impl<T: Real> CubicRoots<T> {
    pub fn as_array(&self) -> [Cx<T>; 3] {
        [re(self.xi1), self.xi2, self.xi3]
    }
}

/// Monic coefficients `[a2, a1, a0]` of `p`.
pub fn cubic_coefficients<T: Real>(m: u32, reynolds: T, epsilon: T) -> [T; 3] {
    let mf = T::from_u32(m).unwrap();
    let k = mf * mf * reynolds.powi(4) / T::lit(4.0);
    [k * epsilon * epsilon, -T::lit(2.0) * k * epsilon, k]
}

fn eval<T: Real>(a: &[T; 3], z: Cx<T>) -> (Cx<T>, Cx<T>, T) {
    let p = ((z + a[0]) * z + a[1]) * z + a[2];
    let dp = (z * T::lit(3.0) + a[0] * T::lit(2.0)) * z + a[1];
    let n = z.norm();
    let scale = n * n * n + a[0].abs() * n * n + a[1].abs() * n + a[2].abs();
    (p, dp, scale)
}

fn polish<T: Real>(a: &[T; 3], mut z: Cx<T>) -> Cx<T> {
    for _ in 0..4 {
        let (p, dp, _) = eval(a, z);
        if dp.norm() == T::zero() {
            break;
        }
        let step = p / dp;
        z = z - step;
        if step.norm() <= T::epsilon() * z.norm() {
            break;
        }
    }
    z
}

/// The real root by bracketing on `(−L, 0)` with `L` the Cauchy bound, then
/// deflation to the conjugate pair.
pub fn cubic_roots<T: Real>(m: u32, reynolds: T, epsilon: T) -> Result<CubicRoots<T>> {
    if m == 0 {
        return Err(Error::InvalidParameter("cubic needs m >= 1".into()));
    }
    if !(reynolds > T::zero()) || !reynolds.is_finite() {
        return Err(Error::InvalidParameter(format!("Reynolds number must be > 0, got {reynolds}")));
    }
    if !(epsilon >= T::zero()) || !epsilon.is_finite() {
        return Err(Error::InvalidParameter(format!("epsilon must be >= 0, got {epsilon}")));
    }
    let a = cubic_coefficients(m, reynolds, epsilon);
    let bound = T::one() + a.iter().fold(T::zero(), |acc, c| acc.max(c.abs()));
    let real_p = |x: T| Ok(eval(&a, re(x)).0.re);
    let x0 = brent(real_p, -bound, T::zero(), bound * T::epsilon())?;
    let xi1 = polish(&a, re(x0)).re;
    // p(ξ) = (ξ − ξ1)(ξ² + bξ + c) with c = −a0/ξ1.
    let b = a[0] + xi1;
    let c = -a[2] / xi1;
    let disc = b * b - T::lit(4.0) * c;
    if !(disc < T::zero()) {
        return Err(Error::DiscriminantSign(format!(
            "quadratic factor has real roots (b² − 4c = {disc:e}) at m = {m}, R = {reynolds}, ε = {epsilon}"
        )));
    }
    let xi2 = polish(&a, cx(-b / T::lit(2.0), (-disc).sqrt() / T::lit(2.0)));
    let xi2 = if xi2.im < T::zero() { xi2.conj() } else { xi2 };
    let roots = CubicRoots { xi1, xi2, xi3: xi2.conj() };
    for z in roots.as_array() {
        let (p, _, scale) = eval(&a, z);
        if p.norm() > T::lit(1e-10).max(T::lit(64.0) * T::epsilon()) * scale {
            return Err(Error::NonConvergence(format!("cubic residual {:e} at ξ = {z}", p.norm())));
        }
    }
    Ok(roots)
}
