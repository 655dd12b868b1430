//! Integer-order cylinder functions of complex argument.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cx, i_pow, re, Cx, KahanSum, Real};

/// Which cylinder function to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CylinderKind {
    /// Bessel function of the first kind.
    J,
    /// Bessel function of the second kind.
    Y,
    /// Modified Bessel function of the first kind.
    I,
    /// Modified Bessel function of the second kind.
    K,
}

/// Radius below which power series are used instead of Miller recurrence.
pub const SERIES_RADIUS: f64 = 5.0;

pub(crate) const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn is_zero<T: Real>(z: Cx<T>) -> bool {
    z.re == T::zero() && z.im == T::zero()
}

fn finite<T: Real>(z: Cx<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

fn check_finite<T: Real>(v: Cx<T>, what: &str, z: Cx<T>) -> Result<Cx<T>> {
    if finite(v) {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("{what} not representable at z = {z}")))
    }
}

/// Power series `I_n(z) = (z/2)^n Σ (z²/4)^k / (k!(n+k)!)`.
pub(crate) fn i_series<T: Real>(n: u32, z: Cx<T>) -> Cx<T> {
    let half = z * T::lit(0.5);
    let q = half * half;
    let mut t = re(T::one());
    for k in 1..=n {
        t = t * half / T::from_u32(k).unwrap();
    }
    let mut acc = KahanSum::new();
    acc.add(t);
    let tiny = T::epsilon() * T::lit(0.1);
    for k in 1..500u32 {
        t = t * q / (T::from_u32(k).unwrap() * T::from_u32(n + k).unwrap());
        acc.add(t);
        if t.norm() <= tiny * acc.value().norm() {
            break;
        }
    }
    acc.value()
}

/// `I_0 .. I_L` for `Re z >= 0`, where `L >= nmax` is large enough that higher
/// orders are negligible against `I_0 .. I_nmax` when `full` is set.
fn i_sequence_right<T: Real>(nmax: u32, z: Cx<T>, full: bool) -> Result<Vec<Cx<T>>> {
    if is_zero(z) {
        let mut v = vec![re(T::zero()); nmax as usize + 1];
        v[0] = re(T::one());
        return Ok(v);
    }
    if z.norm() <= T::lit(SERIES_RADIUS) {
        let top = if full { nmax.max(32) } else { nmax };
        return Ok((0..=top).map(|n| i_series(n, z)).collect());
    }
    i_miller(nmax, z, full)
}

/// Miller backward recurrence for `I_0 .. I_L`, `Re z >= 0`, `z != 0`.
pub(crate) fn i_miller<T: Real>(nmax: u32, z: Cx<T>, full: bool) -> Result<Vec<Cx<T>>> {
    let azf = z.norm().to_f64_lossy();
    let base = (nmax as f64).max(azf);
    let start = (base + 10.0 * base.sqrt() + 24.0).ceil() as usize;
    let big = T::max_value().sqrt().sqrt();
    let mut vals = vec![re(T::zero()); start + 2];
    vals[start] = re(T::one());
    let mut next = re(T::zero());
    let mut cur = re(T::one());
    for k in (1..=start).rev() {
        let prev = cur * (T::from_usize(2 * k).unwrap()) / z + next;
        next = cur;
        cur = prev;
        vals[k - 1] = prev;
        if prev.norm() > big {
            let s = T::one() / big;
            for v in vals[k - 1..=start].iter_mut() {
                *v = *v * s;
            }
            cur = cur * s;
            next = next * s;
        }
    }
    let mut acc = KahanSum::new();
    for k in (1..=start).rev() {
        acc.add(vals[k] * T::lit(2.0));
    }
    acc.add(vals[0]);
    let s = acc.value();
    let scale = z.exp() / s;
    let keep = if full { start } else { nmax as usize };
    vals.truncate(keep + 1);
    for v in vals.iter_mut() {
        *v = *v * scale;
    }
    if !finite(scale) {
        return Err(Error::Overflow(format!("modified Bessel sequence at z = {z}")));
    }
    Ok(vals)
}

/// `I_0 .. I_L` for any `z` (see [`i_sequence_right`]).
fn i_sequence<T: Real>(nmax: u32, z: Cx<T>, full: bool) -> Result<Vec<Cx<T>>> {
    if z.re >= T::zero() {
        i_sequence_right(nmax, z, full)
    } else {
        let mut v = i_sequence_right(nmax, -z, full)?;
        for (n, x) in v.iter_mut().enumerate() {
            if n % 2 == 1 {
                *x = -*x;
            }
        }
        Ok(v)
    }
}

/// `J_0 .. J_L` via `J_n(z) = i^n I_n(−iz)`.
fn j_sequence<T: Real>(nmax: u32, z: Cx<T>, full: bool) -> Result<Vec<Cx<T>>> {
    let (w, sign) = if z.im >= T::zero() {
        (cx(z.im, -z.re), 1i64)
    } else {
        (cx(-z.im, z.re), -1i64)
    };
    let mut v = i_sequence_right(nmax, w, full)?;
    for (n, x) in v.iter_mut().enumerate() {
        *x = *x * i_pow::<T>(sign * n as i64);
    }
    Ok(v)
}

/// `Y_0 .. Y_nmax` from `Y_n(z) = i J_n(z) − (2/π) i^{−n} K_n(−iz)` for
/// `Im z >= 0`, and `Y_n(z̄) = conj Y_n(z)` below the real axis.
fn y_sequence<T: Real>(nmax: u32, z: Cx<T>) -> Result<Vec<Cx<T>>> {
    if z.im < T::zero() {
        return Ok(y_sequence(nmax, z.conj())?.into_iter().map(|v| v.conj()).collect());
    }
    let js = j_sequence(nmax, z, false)?;
    let ks = k_sequence(nmax, cx(z.im, -z.re))?;
    let c = T::lit(2.0) / T::PI();
    Ok(js
        .iter()
        .zip(&ks)
        .enumerate()
        .map(|(n, (&j, &k))| cx(-j.im, j.re) - i_pow::<T>(-(n as i64)) * k * c)
        .collect())
}

/// `K_0` and `K_1` for `Re z >= 0`, `z != 0`.
fn k01_right<T: Real>(z: Cx<T>) -> Result<(Cx<T>, Cx<T>)> {
    let two = T::lit(2.0);
    if z.norm() <= two {
        let half = z * T::lit(0.5);
        let q = half * half;
        let lg = half.ln() + T::lit(EULER_GAMMA);
        let i0 = i_series(0, z);
        let i1 = i_series(1, z);
        let mut t = re(T::one());
        let mut h = T::zero();
        let mut acc = KahanSum::new();
        for k in 1..200u32 {
            let kf = T::from_u32(k).unwrap();
            t = t * q / (kf * kf);
            h = h + T::one() / kf;
            let term = t * h;
            acc.add(term);
            if term.norm() <= T::epsilon() * T::lit(0.1) * acc.value().norm().max(T::one()) {
                break;
            }
        }
        let k0 = -lg * i0 + acc.value();
        let k1 = (z.inv() - i1 * k0) / i0;
        return Ok((k0, k1));
    }
    // Steed's evaluation of Temme's continued fraction CF2 (order 0).
    let one = re(T::one());
    let a1 = T::lit(0.25);
    let mut b = (z + one) * two;
    let mut d = b.inv();
    let mut h = d;
    let mut delh = d;
    let mut q1 = re(T::zero());
    let mut q2 = re(T::one());
    let mut q = re(a1);
    let mut c = re(a1);
    let mut a = -a1;
    let mut s = one + q * delh;
    let tol = T::epsilon();
    let mut converged = false;
    for i in 2..200_000usize {
        let fi = T::from_usize(i).unwrap();
        a = a - two * (fi - T::one());
        c = -c * a / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q = q + c * qnew;
        b = b + two;
        d = (b + d * a).inv();
        delh = (b * d - one) * delh;
        h = h + delh;
        let dels = q * delh;
        s = s + dels;
        if dels.norm() < tol * s.norm() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence(format!("K continued fraction at z = {z}")));
    }
    h = h * a1;
    let k0 = (re(T::PI()) / (z * two)).sqrt() * (-z).exp() / s;
    let k1 = k0 * (z + re(T::lit(0.5)) - h) / z;
    Ok((k0, k1))
}

fn k_sequence<T: Real>(nmax: u32, z: Cx<T>) -> Result<Vec<Cx<T>>> {
    let forward = |k0: Cx<T>, k1: Cx<T>, w: Cx<T>| {
        let mut v = vec![k0, k1];
        for n in 1..nmax as usize {
            let next = v[n] * T::from_usize(2 * n).unwrap() / w + v[n - 1];
            v.push(next);
        }
        v.truncate(nmax as usize + 1);
        v
    };
    if z.re >= T::zero() {
        let (k0, k1) = k01_right(z)?;
        return Ok(forward(k0, k1, z));
    }
    let w = -z;
    let (k0, k1) = k01_right(w)?;
    let kw = forward(k0, k1, w);
    let iw = i_sequence_right(nmax, w, false)?;
    let sign = if z.im >= T::zero() { -T::one() } else { T::one() };
    let ipi = cx(T::zero(), sign * T::PI());
    Ok(kw
        .iter()
        .zip(&iw)
        .enumerate()
        .map(|(n, (&k, &i))| {
            let kk = if n % 2 == 1 { -k } else { k };
            kk + ipi * i
        })
        .collect())
}

/// Values of `C_0 .. C_nmax` for the given kind.
pub fn cyl_sequence<T: Real>(kind: CylinderKind, nmax: u32, z: Cx<T>) -> Result<Vec<Cx<T>>> {
    let v = match kind {
        CylinderKind::J => j_sequence(nmax, z, false)?,
        CylinderKind::I => i_sequence(nmax, z, false)?,
        CylinderKind::Y | CylinderKind::K => {
            if is_zero(z) {
                return Err(Error::Domain(format!("{kind:?} is singular at z = 0")));
            }
            if kind == CylinderKind::Y {
                y_sequence(nmax, z)?
            } else {
                k_sequence(nmax, z)?
            }
        }
    };
    for x in &v {
        check_finite(*x, "cylinder function", z)?;
    }
    Ok(v)
}

fn reflect_sign(order: i32) -> i32 {
    if order < 0 && order % 2 != 0 {
        -1
    } else {
        1
    }
}

/// `C_order(z)` for `C ∈ {J, Y, I, K}`.
///
/// Negative orders are accepted for `J` and `Y` through `C_{−m} = (−1)^m C_m`;
/// `I` and `K` require `order >= 0`.
pub fn cyl_eval<T: Real>(kind: CylinderKind, order: i32, z: Cx<T>) -> Result<Cx<T>> {
    if order < 0 && matches!(kind, CylinderKind::I | CylinderKind::K) {
        return Err(Error::Domain(format!("{kind:?} requires order >= 0, got {order}")));
    }
    let n = order.unsigned_abs();
    let v = cyl_sequence(kind, n, z)?[n as usize];
    Ok(if reflect_sign(order) < 0 { -v } else { v })
}

/// `C_order'(z)` from the recurrence identities.
pub fn cyl_deriv<T: Real>(kind: CylinderKind, order: i32, z: Cx<T>) -> Result<Cx<T>> {
    if order < 0 {
        if matches!(kind, CylinderKind::I | CylinderKind::K) {
            return Err(Error::Domain(format!("{kind:?} requires order >= 0, got {order}")));
        }
        let d = cyl_deriv(kind, -order, z)?;
        return Ok(if reflect_sign(order) < 0 { -d } else { d });
    }
    let n = order as u32;
    let v = cyl_sequence(kind, n + 1, z)?;
    let (c, c1) = (v[n as usize], v[n as usize + 1]);
    let half = T::lit(0.5);
    if is_zero(z) {
        return match kind {
            CylinderKind::J | CylinderKind::I => Ok(if n == 1 { re(half) } else { re(T::zero()) }),
            _ => Err(Error::Domain(format!("{kind:?}' is singular at z = 0"))),
        };
    }
    let m = T::from_u32(n).unwrap();
    Ok(match kind {
        CylinderKind::J | CylinderKind::Y | CylinderKind::K => c * m / z - c1,
        CylinderKind::I => c * m / z + c1,
    })
}

/// `(C_m(x), C_{m+1}(x))` for real `x`, `C ∈ {J, I}`.
pub fn real_pair<T: Real>(kind: CylinderKind, m: u32, x: T) -> Result<(T, T)> {
    debug_assert!(matches!(kind, CylinderKind::J | CylinderKind::I));
    let v = cyl_sequence(kind, m + 1, re(x))?;
    Ok((v[m as usize].re, v[m as usize + 1].re))
}

/// `J_m(x)` for real `x`.
pub fn bessel_j<T: Real>(m: i32, x: T) -> Result<T> {
    Ok(cyl_eval(CylinderKind::J, m, re(x))?.re)
}

/// `I_m(x)` for real `x`.
pub fn bessel_i<T: Real>(m: u32, x: T) -> Result<T> {
    Ok(cyl_eval(CylinderKind::I, m as i32, re(x))?.re)
}

/// The entire function `E_m(s) = J_m(√s)/(√s)^m = Σ (−s/4)^k / (k!(k+m)! 2^m)`.
///
/// Real for real `s`; for `s < 0` it equals `I_m(√−s)/(√−s)^m`.
pub fn bessel_j_reduced<T: Real>(m: u32, s: T) -> Result<T> {
    let lim = T::lit(SERIES_RADIUS * SERIES_RADIUS);
    if s.abs() <= lim {
        let q = -s * T::lit(0.25);
        let mut t = T::one();
        for k in 1..=m {
            t = t / (T::lit(2.0) * T::from_u32(k).unwrap());
        }
        let mut acc = KahanSum::new();
        acc.add(re(t));
        for k in 1..200u32 {
            t = t * q / (T::from_u32(k).unwrap() * T::from_u32(k + m).unwrap());
            acc.add(re(t));
            if t.abs() <= T::epsilon() * T::lit(0.1) * acc.value().re.abs() {
                break;
            }
        }
        return Ok(acc.value().re);
    }
    let x = s.abs().sqrt();
    let v = if s > T::zero() {
        bessel_j(m as i32, x)?
    } else {
        bessel_i(m, x)?
    };
    let out = v / x.powi(m as i32);
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::Overflow(format!("reduced Bessel E_{m} at s = {s}")))
    }
}

/// `I_m(√λ)J_m'(√λ) − J_m(√λ)I_m'(√λ) = −(I_m J_{m+1} + J_m I_{m+1})(√λ)`.
pub fn cross_product_fn<T: Real>(m: u32, lambda: T) -> Result<T> {
    if lambda <= T::zero() {
        return Err(Error::Domain(format!("cross product needs λ > 0, got {lambda}")));
    }
    let x = lambda.sqrt();
    let (j0, j1) = real_pair(CylinderKind::J, m, x)?;
    let (i0, i1) = real_pair(CylinderKind::I, m, x)?;
    Ok(-(i0 * j1 + j0 * i1))
}

/// `cross_product_fn(m, s) / s^{m+1/2}`: same positive roots, no trivial zero at 0.
pub fn cross_product_reduced<T: Real>(m: u32, s: T) -> Result<T> {
    Ok(-(bessel_j_reduced(m, -s)? * bessel_j_reduced(m + 1, s)?
        + bessel_j_reduced(m, s)? * bessel_j_reduced(m + 1, -s)?))
}

/// Complex-argument helper: `C_m(z)` and `C_m'(z)` from one sequence.
pub(crate) fn value_and_deriv<T: Real>(
    kind: CylinderKind,
    m: u32,
    z: Cx<T>,
) -> Result<(Cx<T>, Cx<T>)> {
    let v = cyl_sequence(kind, m + 1, z)?;
    let (c, c1) = (v[m as usize], v[m as usize + 1]);
    if is_zero(z) {
        let d = if m == 1 { T::lit(0.5) } else { T::zero() };
        return Ok((c, Complex::new(d, T::zero())));
    }
    let mf = T::from_u32(m).unwrap();
    let d = match kind {
        CylinderKind::I => c * mf / z + c1,
        _ => c * mf / z - c1,
    };
    Ok((c, d))
}

/// [`bessel_j_reduced`] for complex `s` (branch-free since `E_m` is entire).
pub fn bessel_j_reduced_complex<T: Real>(m: u32, s: Cx<T>) -> Result<Cx<T>> {
    let lim = T::lit(SERIES_RADIUS * SERIES_RADIUS);
    if s.norm() <= lim {
        let q = -s * T::lit(0.25);
        let mut t = re(T::one());
        for k in 1..=m {
            t = t / (T::lit(2.0) * T::from_u32(k).unwrap());
        }
        let mut acc = KahanSum::new();
        acc.add(t);
        for k in 1..200u32 {
            t = t * q / (T::from_u32(k).unwrap() * T::from_u32(k + m).unwrap());
            acc.add(t);
            if t.norm() <= T::epsilon() * T::lit(0.1) * acc.value().norm() {
                break;
            }
        }
        return Ok(acc.value());
    }
    let x = s.sqrt();
    let v = cyl_eval(CylinderKind::J, m as i32, x)? / x.powi(m as i32);
    check_finite(v, "reduced Bessel function", s)
}
