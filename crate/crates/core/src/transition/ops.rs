use crate::error::{Error, Result};
use crate::field::{AzimuthalField, SampledField};
use crate::profile::{basis_value, ProfileSamples, RadialProfile};
use crate::quadrature::RadialGrid;
use crate::scalar::{cx, re, Cx, Real};

/// Which radial function enters the first term of the second component of `H`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum NonlinearForm {
    /// `J((1 − εΔ)Δw_I, ψ_J) + εJ(Δw_I, w_J)`.
    #[default]
    Literal,
    /// `J((1 − εΔ)Δψ_I, ψ_J) + εJ(Δw_I, w_J)`, the advective term of the
    /// stream-function equation.
    FieldEquation,
}

/// Scalar samples `e^{imθ} f(r)` on a radial grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledScalar<T: Real> {
    pub m: i32,
    pub values: Vec<Cx<T>>,
}

/// `J(f, g) = (1/r)(f_r g_θ − f_θ g_r)` for `f = e^{im₁θ}F`, `g = e^{im₂θ}G`:
/// `e^{i(m₁+m₂)θ} (i/r)(m₂F′G − m₁FG′)` at the radii `rs`.
///
/// `r = 0` is only accepted when `m₁ = m₂ = 0`, where `J` vanishes identically.
pub fn advection_j<T: Real>(
    f: &ProfileSamples<T>,
    g: &ProfileSamples<T>,
    rs: &[T],
) -> Result<SampledScalar<T>> {
    let m1 = T::from_i32(f.m).unwrap();
    let m2 = T::from_i32(g.m).unwrap();
    let zero = re(T::zero());
    let mut values = Vec::with_capacity(rs.len());
    for (i, &r) in rs.iter().enumerate() {
        if f.m == 0 && g.m == 0 {
            values.push(zero);
            continue;
        }
        if r == T::zero() {
            return Err(Error::Domain("advection operator sampled at r = 0".into()));
        }
        let v = (f.deriv[i] * g.value[i] * m2 - f.value[i] * g.deriv[i] * m1) / r;
        let out = cx(-v.im, v.re);
        if !(out.re.is_finite() && out.im.is_finite()) {
            return Err(Error::Overflow(format!("advection term non-finite at r = {r}")));
        }
        values.push(out);
    }
    Ok(SampledScalar { m: f.m + g.m, values })
}

/// `∫∫ a b̄ r dr dθ` for scalar samples.
pub fn scalar_inner<T: Real>(a: &SampledScalar<T>, b: &SampledScalar<T>, grid: &RadialGrid<T>) -> Cx<T> {
    if a.m != b.m {
        return re(T::zero());
    }
    let mut s = re(T::zero());
    for i in 0..grid.len() {
        s = s + a.values[i] * b.values[i].conj() * grid.rw[i];
    }
    s * (T::lit(2.0) * T::PI())
}

/// Samples of a field and of every derived profile `H` needs, from one pass
/// over the basis functions.
#[derive(Clone, Debug)]
pub struct FieldSamples<T: Real> {
    pub m: i32,
    pub w: ProfileSamples<T>,
    pub psi: ProfileSamples<T>,
    /// `(1 − εΔ)w`.
    pub w_m: ProfileSamples<T>,
    /// `Δw`.
    pub lap_w: ProfileSamples<T>,
    /// `(1 − εΔ)Δw`.
    pub lap_w_m: ProfileSamples<T>,
    /// `(1 − εΔ)Δψ`.
    pub lap_psi_m: ProfileSamples<T>,
}

fn empty<T: Real>(m: i32, n: usize) -> ProfileSamples<T> {
    ProfileSamples { m, value: vec![re(T::zero()); n], deriv: vec![re(T::zero()); n] }
}

fn accumulate<T: Real>(
    profile: &RadialProfile<T>,
    rs: &[T],
    epsilon: T,
    targets: &mut [(&mut ProfileSamples<T>, fn(T, T) -> T)],
) -> Result<()> {
    let n = profile.order();
    for t in &profile.terms {
        let kappa = t.laplacian_factor();
        let factors: Vec<Cx<T>> = targets.iter().map(|(_, f)| t.coeff * f(kappa, epsilon)).collect();
        if factors.iter().all(|c| c.norm() == T::zero()) {
            continue;
        }
        for (i, &r) in rs.iter().enumerate() {
            let (b, db) = basis_value(t.basis, n, t.scale, r)?;
            for ((target, _), c) in targets.iter_mut().zip(&factors) {
                target.value[i] = target.value[i] + *c * b;
                target.deriv[i] = target.deriv[i] + *c * db;
            }
        }
    }
    Ok(())
}

impl<T: Real> FieldSamples<T> {
    pub fn new(field: &AzimuthalField<T>, epsilon: T, rs: &[T]) -> Result<Self> {
        let m = field.m;
        let n = rs.len();
        let (mut w, mut psi, mut w_m, mut lap_w, mut lap_w_m, mut lap_psi_m) =
            (empty(m, n), empty(m, n), empty(m, n), empty(m, n), empty(m, n), empty(m, n));
        accumulate(
            &field.w,
            rs,
            epsilon,
            &mut [
                (&mut w, |_, _| T::one()),
                (&mut w_m, |k, e| T::one() - e * k),
                (&mut lap_w, |k, _| k),
                (&mut lap_w_m, |k, e| k * (T::one() - e * k)),
            ],
        )?;
        accumulate(
            &field.psi,
            rs,
            epsilon,
            &mut [(&mut psi, |_, _| T::one()), (&mut lap_psi_m, |k, e| k * (T::one() - e * k))],
        )?;
        Ok(Self { m, w, psi, w_m, lap_w, lap_w_m, lap_psi_m })
    }

    /// Samples of the conjugate field (wavenumber `−m`).
    pub fn conj(&self) -> Self {
        let c = |p: &ProfileSamples<T>| ProfileSamples {
            m: -p.m,
            value: p.value.iter().map(|v| v.conj()).collect(),
            deriv: p.deriv.iter().map(|v| v.conj()).collect(),
        };
        Self {
            m: -self.m,
            w: c(&self.w),
            psi: c(&self.psi),
            w_m: c(&self.w_m),
            lap_w: c(&self.lap_w),
            lap_w_m: c(&self.lap_w_m),
            lap_psi_m: c(&self.lap_psi_m),
        }
    }

    pub fn scaled(&self, s: Cx<T>) -> Self {
        let c = |p: &ProfileSamples<T>| ProfileSamples {
            m: p.m,
            value: p.value.iter().map(|v| *v * s).collect(),
            deriv: p.deriv.iter().map(|v| *v * s).collect(),
        };
        Self {
            m: self.m,
            w: c(&self.w),
            psi: c(&self.psi),
            w_m: c(&self.w_m),
            lap_w: c(&self.lap_w),
            lap_w_m: c(&self.lap_w_m),
            lap_psi_m: c(&self.lap_psi_m),
        }
    }
}

/// `H(f_I, f_J) = (J(ψ_I, (1 − εΔ)w_J), J((1 − εΔ)Δw_I, ψ_J) + εJ(Δw_I, w_J))`.
pub fn bilinear_h<T: Real>(
    fi: &FieldSamples<T>,
    fj: &FieldSamples<T>,
    epsilon: T,
    form: NonlinearForm,
    rs: &[T],
) -> Result<SampledField<T>> {
    let first = advection_j(&fi.psi, &fj.w_m, rs)?;
    let lead = match form {
        NonlinearForm::Literal => &fi.lap_w_m,
        NonlinearForm::FieldEquation => &fi.lap_psi_m,
    };
    let a = advection_j(lead, &fj.psi, rs)?;
    let b = advection_j(&fi.lap_w, &fj.w, rs)?;
    let psi = a.values.iter().zip(&b.values).map(|(x, y)| *x + *y * epsilon).collect();
    Ok(SampledField { m: first.m, w: first.values, psi })
}

/// `H_s(f_I, f_J) = H(f_I, f_J) + H(f_J, f_I)`.
pub fn bilinear_hs<T: Real>(
    fi: &FieldSamples<T>,
    fj: &FieldSamples<T>,
    epsilon: T,
    form: NonlinearForm,
    rs: &[T],
) -> Result<SampledField<T>> {
    let mut h = bilinear_h(fi, fj, epsilon, form, rs)?;
    h.add_assign(&bilinear_h(fj, fi, epsilon, form, rs)?);
    Ok(h)
}
