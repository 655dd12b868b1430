//! Scalar root bracketing and refinement.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Brent's method on a sign-changing bracket `[a, b]`.
///
/// Terminates when the bracket is narrower than `xtol` (absolute) plus a few ulps
/// of the iterate, or when `f` hits zero exactly.
pub fn brent<T: Real, F>(mut f: F, a: T, b: T, xtol: T) -> Result<T>
where
    F: FnMut(T) -> Result<T>,
{
    let (mut a, mut b) = (a, b);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if (fa > T::zero()) == (fb > T::zero()) {
        return Err(Error::Bracketing(format!(
            "no sign change on [{a}, {b}]"
        )));
    }
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..300 {
        if (fb > T::zero()) == (fc > T::zero()) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = two * T::epsilon() * b.abs() + half * xtol;
        let m = half * (c - b);
        if m.abs() <= tol || fb == T::zero() {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * m * s;
                q = T::one() - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (two * m * qa * (qa - r) - (b - a) * (r - T::one()));
                q = (qa - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            } else {
                p = -p;
            }
            if two * p < (T::lit(3.0) * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol {
            b + d
        } else if m > T::zero() {
            b + tol
        } else {
            b - tol
        };
        fb = f(b)?;
    }
    Err(Error::NonConvergence("Brent iteration limit".into()))
}

/// Plain bisection on a sign-changing bracket until `|b - a| <= xtol`.
pub fn bisect<T: Real, F>(mut f: F, a: T, b: T, xtol: T) -> Result<T>
where
    F: FnMut(T) -> Result<T>,
{
    let (mut lo, mut hi) = (a, b);
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if flo == T::zero() {
        return Ok(lo);
    }
    if fhi == T::zero() {
        return Ok(hi);
    }
    if (flo > T::zero()) == (fhi > T::zero()) {
        return Err(Error::Bracketing(format!("no sign change on [{lo}, {hi}]")));
    }
    for _ in 0..400 {
        let mid = (lo + hi) * T::lit(0.5);
        if (hi - lo).abs() <= xtol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let fm = f(mid)?;
        if fm == T::zero() {
            return Ok(mid);
        }
        if (fm > T::zero()) == (flo > T::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * T::lit(0.5))
}

/// Walks `x0, x0 + h, ...` up to `x_max` and returns the `count` first brackets
/// `[x_k, x_{k+1}]` on which `f` changes sign.
pub fn scan_brackets<T: Real, F>(
    mut f: F,
    x0: T,
    h: T,
    x_max: T,
    count: usize,
) -> Result<Vec<(T, T)>>
where
    F: FnMut(T) -> Result<T>,
{
    let mut out = Vec::with_capacity(count);
    let mut x = x0;
    let mut fx = f(x)?;
    let mut k = 0i64;
    while out.len() < count {
        k += 1;
        let xn = x0 + h * T::from_int(k);
        if xn > x_max {
            break;
        }
        let fxn = f(xn)?;
        if fx == T::zero() || (fx > T::zero()) != (fxn > T::zero()) {
            out.push((x, xn));
        }
        x = xn;
        fx = fxn;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cubic_root() {
        let r = brent(|x: f64| Ok(x * x * x - 2.0), 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_missing_sign_change() {
        assert!(matches!(
            brent(|x: f64| Ok(x * x + 1.0), -1.0, 1.0, 1e-12),
            Err(Error::Bracketing(_))
        ));
    }

    #[test]
    fn bisect_matches_brent() {
        let f = |x: f64| Ok(x.cos() - x);
        let a = bisect(f, 0.0, 1.0, 1e-14).unwrap();
        let b = brent(f, 0.0, 1.0, 1e-14).unwrap();
        assert!((a - b).abs() < 1e-13);
    }

    #[test]
    fn scan_finds_sine_zeros() {
        let br = scan_brackets(|x: f64| Ok(x.sin()), 0.1, 0.3, 20.0, 4).unwrap();
        assert_eq!(br.len(), 4);
        for (k, (a, b)) in br.iter().enumerate() {
            let z = std::f64::consts::PI * (k + 1) as f64;
            assert!(*a <= z && z <= *b);
        }
    }
}
