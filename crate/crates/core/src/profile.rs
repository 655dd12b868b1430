//! Radial profiles over the `Δ_m`-closed basis `{r^|m|, J_|m|(ar), I_|m|(ar)}`.

use crate::error::Result;
use crate::quadrature::RadialGrid;
use crate::scalar::{re, Cx, Real};
use crate::specfun::{real_pair, CylinderKind};

/// Radial basis function of a [`RadialProfile`] term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `r^|m|`, annihilated by `Δ_m`.
    Power,
    /// `J_|m|(a r)`, with `Δ_m J = −a² J`.
    J,
    /// `I_|m|(a r)`, with `Δ_m I = +a² I`.
    I,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Term<T: Real> {
    pub basis: Basis,
    /// Positive radial scale `a` (ignored for [`Basis::Power`]).
    pub scale: T,
    pub coeff: Cx<T>,
}

impl<T: Real> Term<T> {
    /// Eigenvalue of `Δ_m` on this basis function.
    pub fn laplacian_factor(&self) -> T {
        match self.basis {
            Basis::Power => T::zero(),
            Basis::J => -self.scale * self.scale,
            Basis::I => self.scale * self.scale,
        }
    }

    fn same_function(&self, other: &Self) -> bool {
        self.basis == other.basis && (self.basis == Basis::Power || self.scale == other.scale)
    }
}

/// Closed-form radial function `Σ c_k B_k(r)` with azimuthal wavenumber `m`.
///
/// Only `|m|` enters the radial basis; the sign of `m` is carried for the
/// angular factor `e^{imθ}` of the field it belongs to.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialProfile<T: Real> {
    pub m: i32,
    pub terms: Vec<Term<T>>,
}

/// Values and radial derivatives of a profile on a grid.
#[derive(Clone, Debug)]
pub struct ProfileSamples<T: Real> {
    pub m: i32,
    pub value: Vec<Cx<T>>,
    pub deriv: Vec<Cx<T>>,
}

impl<T: Real> RadialProfile<T> {
    pub fn zero(m: i32) -> Self {
        Self { m, terms: Vec::new() }
    }

    pub fn single(m: i32, basis: Basis, scale: T, coeff: Cx<T>) -> Self {
        let mut p = Self::zero(m);
        p.push(basis, scale, coeff);
        p
    }

    /// Adds `coeff · B(r)`, merging with an existing identical basis function.
    pub fn push(&mut self, basis: Basis, scale: T, coeff: Cx<T>) {
        let t = Term { basis, scale, coeff };
        if let Some(e) = self.terms.iter_mut().find(|e| e.same_function(&t)) {
            e.coeff = e.coeff + coeff;
        } else {
            self.terms.push(t);
        }
    }

    pub fn order(&self) -> u32 {
        self.m.unsigned_abs()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.norm() == T::zero())
    }

    /// `Δ_m f`, exact on the basis.
    pub fn laplacian(&self) -> Self {
        self.affine_laplacian(T::zero(), T::one())
    }

    /// `p f + q Δ_m f`.
    pub fn affine_laplacian(&self, p: T, q: T) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff * (p + q * t.laplacian_factor()),
                ..*t
            })
            .filter(|t| t.coeff.norm() != T::zero())
            .collect();
        Self { m: self.m, terms }
    }

    pub fn scaled(&self, c: Cx<T>) -> Self {
        Self {
            m: self.m,
            terms: self.terms.iter().map(|t| Term { coeff: t.coeff * c, ..*t }).collect(),
        }
    }

    /// Complex conjugate, carried to wavenumber `−m`.
    pub fn conj(&self) -> Self {
        Self {
            m: -self.m,
            terms: self.terms.iter().map(|t| Term { coeff: t.coeff.conj(), ..*t }).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order(), other.order());
        let mut out = self.clone();
        for t in &other.terms {
            out.push(t.basis, t.scale, t.coeff);
        }
        out
    }

    /// Value and `d/dr` at `r ∈ [0, 1]`.
    pub fn eval_with_deriv(&self, r: T) -> Result<(Cx<T>, Cx<T>)> {
        let n = self.order();
        let mut v = re(T::zero());
        let mut d = re(T::zero());
        for t in &self.terms {
            let (b, db) = basis_value(t.basis, n, t.scale, r)?;
            v = v + t.coeff * b;
            d = d + t.coeff * db;
        }
        Ok((v, d))
    }

    pub fn eval(&self, r: T) -> Result<Cx<T>> {
        Ok(self.eval_with_deriv(r)?.0)
    }

    pub fn sample(&self, grid: &RadialGrid<T>) -> Result<ProfileSamples<T>> {
        self.sample_at(&grid.r)
    }

    pub fn sample_at(&self, rs: &[T]) -> Result<ProfileSamples<T>> {
        let mut value = Vec::with_capacity(rs.len());
        let mut deriv = Vec::with_capacity(rs.len());
        for &r in rs {
            let (v, d) = self.eval_with_deriv(r)?;
            value.push(v);
            deriv.push(d);
        }
        Ok(ProfileSamples { m: self.m, value, deriv })
    }
}

/// `B(r)` and `B'(r)` for one basis function of order `n`.
pub fn basis_value<T: Real>(basis: Basis, n: u32, a: T, r: T) -> Result<(T, T)> {
    match basis {
        Basis::Power => {
            let v = r.powi(n as i32);
            let d = if n == 0 {
                T::zero()
            } else {
                T::from_u32(n).unwrap() * r.powi(n as i32 - 1)
            };
            Ok((v, d))
        }
        Basis::J | Basis::I => {
            let kind = if basis == Basis::J { CylinderKind::J } else { CylinderKind::I };
            let x = a * r;
            let (c, c1) = real_pair(kind, n, x)?;
            let dc = if x == T::zero() {
                if n == 1 {
                    T::lit(0.5)
                } else {
                    T::zero()
                }
            } else if basis == Basis::J {
                T::from_u32(n).unwrap() / x * c - c1
            } else {
                T::from_u32(n).unwrap() / x * c + c1
            };
            Ok((c, a * dc))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn sample_profile() -> RadialProfile<f64> {
        let mut p = RadialProfile::single(3, Basis::Power, 0.0, C::new(0.4, -0.2));
        p.push(Basis::J, 5.1, C::new(1.0, 0.3));
        p.push(Basis::I, 9.7, C::new(-2e-4, 1e-4));
        p
    }

    #[test]
    fn laplacian_matches_radial_formula() {
        let p = sample_profile();
        let lap = p.laplacian();
        let h = 1e-4;
        for r in [0.2, 0.55, 0.9] {
            let f = |x: f64| p.eval(x).unwrap();
            let d2 = (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
            let d1 = p.eval_with_deriv(r).unwrap().1;
            let want = d2 + d1 / r - 9.0 * f(r) / (r * r);
            let got = lap.eval(r).unwrap();
            assert!((got - want).norm() < 1e-5 * got.norm().max(1.0), "r = {r}");
        }
    }

    #[test]
    fn power_term_is_harmonic() {
        let p = RadialProfile::single(3, Basis::Power, 0.0, C::new(1.0, 0.0));
        assert!(p.laplacian().is_zero());
        let q = p.affine_laplacian(1.0, -0.5);
        assert_eq!(q, p);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = sample_profile();
        let h = 1e-6;
        for r in [0.1, 0.5, 0.95] {
            let fd = (p.eval(r + h).unwrap() - p.eval(r - h).unwrap()) / (2.0 * h);
            let d = p.eval_with_deriv(r).unwrap().1;
            assert!((fd - d).norm() < 1e-7 * d.norm().max(1.0));
        }
    }

    #[test]
    fn conj_flips_wavenumber_and_coefficients() {
        let p = sample_profile();
        let q = p.conj();
        assert_eq!(q.m, -3);
        let r = 0.4;
        assert!((q.eval(r).unwrap() - p.eval(r).unwrap().conj()).norm() < 1e-15);
    }

    #[test]
    fn push_merges_identical_terms() {
        let mut p = RadialProfile::single(2, Basis::J, 3.0, C::new(1.0, 0.0));
        p.push(Basis::J, 3.0, C::new(0.5, 0.0));
        p.push(Basis::J, 3.5, C::new(0.5, 0.0));
        assert_eq!(p.terms.len(), 2);
        assert_eq!(p.terms[0].coeff, C::new(1.5, 0.0));
    }

    #[test]
    fn origin_values_are_finite() {
        let p = sample_profile();
        let (v, d) = p.eval_with_deriv(0.0).unwrap();
        assert_eq!(v, C::new(0.0, 0.0));
        assert_eq!(d, C::new(0.0, 0.0));
        let q = RadialProfile::single(1, Basis::J, 2.0, C::new(1.0, 0.0));
        assert_eq!(q.eval_with_deriv(0.0).unwrap().1, C::new(1.0, 0.0));
    }
}
