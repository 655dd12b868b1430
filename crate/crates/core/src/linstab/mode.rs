use crate::error::{Error, Result};
use crate::field::{inner_product, norm, AzimuthalField};
use crate::linstab::dispersion::{beta_spectrum, lambda_mu, m0_spectrum, AxisymmetricFamily};
use crate::linstab::FluidParams;
use crate::profile::{basis_value, Basis, RadialProfile};
use crate::quadrature::{RadialGrid, DEFAULT_NODES};
use crate::scalar::{cx, re, Cx, Real};
use crate::specfun::bessel_j;

/// Eigenpair `N φ = β M φ` with its adjoint `N* φ* = β M φ*`.
///
/// `φ` has unit norm with `w` real-positive where `|w|` peaks on the
/// quadrature grid; `φ*` is scaled so that `⟨φ, M φ*⟩ = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralMode<T: Real> {
    pub m: i32,
    pub j: usize,
    pub beta: T,
    pub w: RadialProfile<T>,
    pub psi: RadialProfile<T>,
    pub w_adj: RadialProfile<T>,
    pub psi_adj: RadialProfile<T>,
}

impl<T: Real> SpectralMode<T> {
    pub fn field(&self) -> AzimuthalField<T> {
        AzimuthalField::new(self.w.clone(), self.psi.clone())
    }

    pub fn adjoint(&self) -> AzimuthalField<T> {
        AzimuthalField::new(self.w_adj.clone(), self.psi_adj.clone())
    }

    /// The mode of wavenumber `−m`.
    pub fn conj(&self) -> Self {
        Self {
            m: -self.m,
            j: self.j,
            beta: self.beta,
            w: self.w.conj(),
            psi: self.psi.conj(),
            w_adj: self.w_adj.conj(),
            psi_adj: self.psi_adj.conj(),
        }
    }

    /// Multiplies `φ` by `c` and `φ*` by `1/c̄`, preserving `⟨φ, Mφ*⟩`.
    pub fn rescaled(&self, c: Cx<T>) -> Self {
        let ca = c.conj().inv();
        Self {
            w: self.w.scaled(c),
            psi: self.psi.scaled(c),
            w_adj: self.w_adj.scaled(ca),
            psi_adj: self.psi_adj.scaled(ca),
            ..self.clone()
        }
    }

    /// `(|w(1)|, |ψ(1)|, |ψ'(1)|)` of the mode and of its adjoint.
    pub fn boundary_residuals(&self) -> Result<([T; 3], [T; 3])> {
        let one = T::one();
        let (w, _) = self.w.eval_with_deriv(one)?;
        let (p, dp) = self.psi.eval_with_deriv(one)?;
        let (wa, _) = self.w_adj.eval_with_deriv(one)?;
        let (pa, dpa) = self.psi_adj.eval_with_deriv(one)?;
        Ok(([w.norm(), p.norm(), dp.norm()], [wa.norm(), pa.norm(), dpa.norm()]))
    }
}

/// Builds eigenpair `(m, j)` at `params` using the default radial grid.
pub fn build_mode<T: Real>(m: i32, j: usize, params: &FluidParams<T>) -> Result<SpectralMode<T>> {
    build_mode_on(m, j, params, &RadialGrid::new(DEFAULT_NODES)?)
}

/// Builds eigenpair `(m, j)`, normalizing on `grid`.
pub fn build_mode_on<T: Real>(
    m: i32,
    j: usize,
    params: &FluidParams<T>,
    grid: &RadialGrid<T>,
) -> Result<SpectralMode<T>> {
    if j == 0 {
        return Err(Error::Range("radial index j is 1-based".into()));
    }
    if m == 0 {
        return axisymmetric_mode(j, params, grid);
    }
    let beta = beta_spectrum(m, j, params)?[j - 1];
    let mode = mode_at(m.unsigned_abs(), j, beta, params, grid)?;
    Ok(if m < 0 { mode.conj() } else { mode })
}

/// Builds the mode for a known eigenvalue `beta` of order `m > 0`.
pub fn mode_at<T: Real>(
    m: u32,
    j: usize,
    beta: T,
    params: &FluidParams<T>,
    grid: &RadialGrid<T>,
) -> Result<SpectralMode<T>> {
    if params.epsilon == T::zero() {
        return Err(Error::DegenerateNullSpace(
            "at ε = 0 the two Bessel factors of the eigenfunction coincide".into(),
        ));
    }
    let (lam, mu) = lambda_mu(m, beta, params)?;
    if lam == T::zero() || mu == T::zero() {
        return Err(Error::Domain(format!("eigenfunction needs λ, μ ≠ 0 (λ = {lam}, μ = {mu})")));
    }
    let n = m;
    let mf = T::from_u32(m).unwrap();
    let r = params.reynolds;
    let se = params.epsilon.sqrt();
    let basis = |s: T| if s > T::zero() { (Basis::J, s.sqrt()) } else { (Basis::I, (-s).sqrt()) };
    let (bl, al) = basis(lam);
    let (bm, am) = basis(mu);
    let (vl, dl) = basis_value(bl, n, al, T::one())?;
    let (vm, dm) = basis_value(bm, n, am, T::one())?;
    let i = cx(T::zero(), T::one());
    let one = re(T::one());

    // Unknowns (c1, c2, c3): w = c1 r^m + c2 φ_λ + c3 φ_μ, ψ from the d-relations.
    let g = -i * beta / (mf * r);
    let mat = [
        [one, re(vl), re(vm)],
        [g, -i * se * vl, i * se * vm],
        [g * mf, -i * se * dl, i * se * dm],
    ];
    let c = null_vector(mat)?;
    let mut w = RadialProfile::zero(m as i32);
    let mut psi = RadialProfile::zero(m as i32);
    w.push(Basis::Power, T::zero(), c[0]);
    w.push(bl, al, c[1]);
    w.push(bm, am, c[2]);
    psi.push(Basis::Power, T::zero(), g * c[0]);
    psi.push(bl, al, -i * se * c[1]);
    psi.push(bm, am, i * se * c[2]);

    // Adjoint unknowns (d1, e2, e3): ψ* = d1 r^m + e2 φ_λ + e3 φ_μ,
    // w* = iλ√ε e2 φ_λ − iμ√ε e3 φ_μ.
    let kl = i * lam * se;
    let km = -i * mu * se;
    let adj = [
        [re(T::zero()), kl * vl, km * vm],
        [one, re(vl), re(vm)],
        [re(mf), re(dl), re(dm)],
    ];
    let d = null_vector(adj)?;
    let mut w_adj = RadialProfile::zero(m as i32);
    let mut psi_adj = RadialProfile::zero(m as i32);
    w_adj.push(bl, al, kl * d[1]);
    w_adj.push(bm, am, km * d[2]);
    psi_adj.push(Basis::Power, T::zero(), d[0]);
    psi_adj.push(bl, al, d[1]);
    psi_adj.push(bm, am, d[2]);

    normalize(
        SpectralMode { m: m as i32, j, beta, w, psi, w_adj, psi_adj },
        params.epsilon,
        grid,
    )
}

/// Scales `φ` to unit norm with a fixed phase, then `φ*` to `⟨φ, Mφ*⟩ = 1`.
fn normalize<T: Real>(mut mode: SpectralMode<T>, epsilon: T, grid: &RadialGrid<T>) -> Result<SpectralMode<T>> {
    let f = mode.field().sample(grid)?;
    let nrm = norm(&f, grid);
    let lead = if f.w.iter().any(|v| v.norm() > T::zero()) { &f.w } else { &f.psi };
    let peak = lead
        .iter()
        .copied()
        .fold(re(T::zero()), |a, v| if v.norm() > a.norm() { v } else { a });
    if !(nrm > T::zero()) || peak.norm() == T::zero() {
        return Err(Error::DegenerateNullSpace("eigenfunction vanishes on the grid".into()));
    }
    let phase = peak.conj() / peak.norm();
    let c = phase / nrm;
    mode.w = mode.w.scaled(c);
    mode.psi = mode.psi.scaled(c);
    let f = mode.field().sample(grid)?;
    let ma = mode.adjoint().apply_m(epsilon).sample(grid)?;
    let p = inner_product(&f, &ma, grid);
    if p.norm() < T::lit(1e-300).max(T::min_positive_value()) {
        return Err(Error::NearZeroDenominator("⟨φ, Mφ*⟩ vanishes".into()));
    }
    let s = p.conj().inv();
    mode.w_adj = mode.w_adj.scaled(s);
    mode.psi_adj = mode.psi_adj.scaled(s);
    Ok(mode)
}

/// Closed-form axisymmetric modes; these are self-adjoint.
fn axisymmetric_mode<T: Real>(j: usize, params: &FluidParams<T>, grid: &RadialGrid<T>) -> Result<SpectralMode<T>> {
    let e = m0_spectrum(j, params)?[j - 1];
    let one = re(T::one());
    let (w, psi) = match e.family {
        AxisymmetricFamily::Vertical => (RadialProfile::single(0, Basis::J, e.alpha, one), RadialProfile::zero(0)),
        AxisymmetricFamily::StreamFunction => {
            let mut psi = RadialProfile::single(0, Basis::J, e.alpha, one);
            psi.push(Basis::Power, T::zero(), re(-bessel_j(0, e.alpha)?));
            (RadialProfile::zero(0), psi)
        }
    };
    let mode = SpectralMode {
        m: 0,
        j,
        beta: e.beta,
        w_adj: w.clone(),
        psi_adj: psi.clone(),
        w,
        psi,
    };
    normalize(mode, params.epsilon, grid)
}

/// Null vector of a rank-2 complex 3×3 matrix.
///
/// Columns are equilibrated and rows normalized; the null vector is the cross
/// product of the best-conditioned pair of rows.
pub(crate) fn null_vector<T: Real>(a: [[Cx<T>; 3]; 3]) -> Result<[Cx<T>; 3]> {
    let mut s = [T::zero(); 3];
    for k in 0..3 {
        for row in &a {
            s[k] = s[k].max(row[k].norm());
        }
        if s[k] == T::zero() {
            s[k] = T::one();
        }
    }
    let mut rows = [[re(T::zero()); 3]; 3];
    for (i, row) in a.iter().enumerate() {
        let scaled: Vec<Cx<T>> = (0..3).map(|k| row[k] / s[k]).collect();
        let n = scaled.iter().fold(T::zero(), |acc, v| acc + v.norm_sqr()).sqrt();
        if n > T::zero() {
            for k in 0..3 {
                rows[i][k] = scaled[k] / n;
            }
        }
    }
    let cross = |p: &[Cx<T>; 3], q: &[Cx<T>; 3]| {
        [
            p[1] * q[2] - p[2] * q[1],
            p[2] * q[0] - p[0] * q[2],
            p[0] * q[1] - p[1] * q[0],
        ]
    };
    let vnorm = |v: &[Cx<T>; 3]| v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
    let mut best = (T::zero(), [re(T::zero()); 3], 0usize);
    for (p, q, other) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let v = cross(&rows[p], &rows[q]);
        let n = vnorm(&v);
        if n > best.0 {
            best = (n, v, other);
        }
    }
    let (n, v, other) = best;
    if n < T::lit(1e-10) {
        return Err(Error::DegenerateNullSpace(format!(
            "boundary matrix has rank < 2 (largest row-pair cross product {n:e})"
        )));
    }
    let v = [v[0] / n, v[1] / n, v[2] / n];
    let res = (0..3).fold(re(T::zero()), |acc, k| acc + rows[other][k] * v[k]).norm();
    if res > T::lit(1e-6) {
        return Err(Error::DegenerateNullSpace(format!(
            "boundary matrix is not singular (residual {res:e}); β is not an eigenvalue"
        )));
    }
    Ok([v[0] / s[0], v[1] / s[1], v[2] / s[2]])
}
