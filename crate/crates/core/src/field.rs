//! Azimuthal Fourier fields `e^{imθ}(w(r), ψ(r))` and the disk inner product.

use crate::error::Result;
use crate::linstab::FluidParams;
use crate::profile::RadialProfile;
use crate::quadrature::RadialGrid;
use crate::scalar::{cx, Cx, Real};

/// `(w, ψ)(r, θ) = e^{imθ}(w_m(r), ψ_m(r))` in closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct AzimuthalField<T: Real> {
    pub m: i32,
    pub w: RadialProfile<T>,
    pub psi: RadialProfile<T>,
}

/// A field held as samples on a radial grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledField<T: Real> {
    pub m: i32,
    pub w: Vec<Cx<T>>,
    pub psi: Vec<Cx<T>>,
}

impl<T: Real> AzimuthalField<T> {
    pub fn new(w: RadialProfile<T>, psi: RadialProfile<T>) -> Self {
        debug_assert_eq!(w.m, psi.m);
        Self { m: w.m, w, psi }
    }

    pub fn conj(&self) -> Self {
        Self { m: -self.m, w: self.w.conj(), psi: self.psi.conj() }
    }

    pub fn scaled(&self, c: Cx<T>) -> Self {
        Self { m: self.m, w: self.w.scaled(c), psi: self.psi.scaled(c) }
    }

    pub fn sample(&self, grid: &RadialGrid<T>) -> Result<SampledField<T>> {
        Ok(SampledField {
            m: self.m,
            w: self.w.sample(grid)?.value,
            psi: self.psi.sample(grid)?.value,
        })
    }

    /// `M(w, ψ) = ((1 − εΔ)w, Δ(εΔ − 1)ψ)`.
    pub fn apply_m(&self, epsilon: T) -> Self {
        let lap = self.psi.laplacian();
        Self {
            m: self.m,
            w: self.w.affine_laplacian(T::one(), -epsilon),
            psi: lap.affine_laplacian(-T::one(), epsilon),
        }
    }

    /// `N(w, ψ) = (Δw/R + imRψ, εimRΔw − Δ²ψ/R)`.
    pub fn apply_n(&self, params: &FluidParams<T>) -> Self {
        let r = params.reynolds;
        let im_r = cx(T::zero(), T::from_i32(self.m).unwrap() * r);
        let lap_w = self.w.laplacian();
        let w = lap_w.scaled(cx(T::one() / r, T::zero())).plus(&self.psi.scaled(im_r));
        let psi = lap_w
            .scaled(im_r * params.epsilon)
            .plus(&self.psi.laplacian().laplacian().scaled(cx(-T::one() / r, T::zero())));
        Self { m: self.m, w, psi }
    }
}

impl<T: Real> SampledField<T> {
    pub fn zero(m: i32, n: usize) -> Self {
        let z = cx(T::zero(), T::zero());
        Self { m, w: vec![z; n], psi: vec![z; n] }
    }

    pub fn scaled(&self, c: Cx<T>) -> Self {
        Self {
            m: self.m,
            w: self.w.iter().map(|v| *v * c).collect(),
            psi: self.psi.iter().map(|v| *v * c).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.m, other.m);
        for (a, b) in self.w.iter_mut().zip(&other.w) {
            *a = *a + *b;
        }
        for (a, b) in self.psi.iter_mut().zip(&other.psi) {
            *a = *a + *b;
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            m: -self.m,
            w: self.w.iter().map(|v| v.conj()).collect(),
            psi: self.psi.iter().map(|v| v.conj()).collect(),
        }
    }
}

/// `∫₀^{2π}∫₀¹ (w_f w̄_g + ψ_f ψ̄_g) r dr dθ`; zero unless `m_f = m_g`.
pub fn inner_product<T: Real>(f: &SampledField<T>, g: &SampledField<T>, grid: &RadialGrid<T>) -> Cx<T> {
    if f.m != g.m {
        return cx(T::zero(), T::zero());
    }
    let mut s = cx(T::zero(), T::zero());
    for i in 0..grid.len() {
        s = s + (f.w[i] * g.w[i].conj() + f.psi[i] * g.psi[i].conj()) * grid.rw[i];
    }
    s * (T::lit(2.0) * T::PI())
}

/// `‖f‖ = √⟨f, f⟩`.
pub fn norm<T: Real>(f: &SampledField<T>, grid: &RadialGrid<T>) -> T {
    inner_product(f, f, grid).re.max(T::zero()).sqrt()
}
