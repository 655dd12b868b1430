//! Gauss–Legendre quadrature on the unit radial interval.

use crate::error::{Error, Result};
use crate::scalar::{Cx, Real};

/// Default node count for radial integrals.
pub const DEFAULT_NODES: usize = 200;

/// Relative change under node doubling beyond which a quadrature is rejected.
pub const DOUBLING_REJECT: f64 = 1e-8;

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let nf = T::from_usize(n).unwrap();
        let half = (n + 1) / 2;
        for i in 0..half {
            let k = T::from_usize(i).unwrap();
            let mut x = (T::PI() * (k + T::lit(0.75)) / (nf + T::lit(0.5))).cos();
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x = x - dx;
                if dx.abs() <= T::epsilon() * T::lit(4.0) {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != T::zero() {
                dp = d;
            }
            let w = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }
}

fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (p0, T::zero());
    }
    for k in 2..=n {
        let kf = T::from_usize(k).unwrap();
        let p2 = ((T::lit(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = T::from_usize(n).unwrap();
    let dp = nf * (x * p1 - p0) / (x * x - T::one());
    (p1, dp)
}

/// Gauss–Legendre nodes mapped to `(0, 1)`, with the area weights `r·w` precomputed.
#[derive(Clone, Debug)]
pub struct RadialGrid<T> {
    pub r: Vec<T>,
    pub w: Vec<T>,
    pub rw: Vec<T>,
}

impl<T: Real> RadialGrid<T> {
    pub fn new(n: usize) -> Result<Self> {
        if n < 16 {
            return Err(Error::InvalidParameter(format!(
                "radial quadrature needs at least 16 nodes, got {n}"
            )));
        }
        let gl = GaussLegendre::<T>::new(n);
        let half = T::lit(0.5);
        let r: Vec<T> = gl.nodes.iter().map(|&x| half * (x + T::one())).collect();
        let w: Vec<T> = gl.weights.iter().map(|&w| half * w).collect();
        let rw = r.iter().zip(&w).map(|(&r, &w)| r * w).collect();
        Ok(Self { r, w, rw })
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    /// `∫₀¹ r f(r) dr` for samples `f` on this grid.
    pub fn integrate(&self, f: &[Cx<T>]) -> Cx<T> {
        debug_assert_eq!(f.len(), self.len());
        let mut s = Cx::new(T::zero(), T::zero());
        for (v, &rw) in f.iter().zip(&self.rw) {
            s = s + *v * rw;
        }
        s
    }
}

/// Result of a radial quadrature together with its doubling diagnostic.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureValue<T: Real> {
    pub value: Cx<T>,
    /// `|Q_{2n} − Q_n|` relative to `∫₀¹ r |f| dr`.
    pub doubling_change: T,
}

fn rule<T: Real, F: FnMut(T) -> Cx<T>>(f: &mut F, grid: &RadialGrid<T>) -> (Cx<T>, T) {
    let mut s = Cx::new(T::zero(), T::zero());
    let mut mag = T::zero();
    for (&r, &rw) in grid.r.iter().zip(&grid.rw) {
        let v = f(r) * rw;
        s = s + v;
        mag = mag + v.norm();
    }
    (s, mag)
}

/// `∫₀¹ r f(r) dr` by `n`-node Gauss–Legendre, checked against the `2n`-node rule.
pub fn radial_quadrature<T: Real, F>(mut f: F, n: usize) -> Result<QuadratureValue<T>>
where
    F: FnMut(T) -> Cx<T>,
{
    let g1 = RadialGrid::new(n)?;
    let g2 = RadialGrid::new(2 * n)?;
    let (q1, _) = rule(&mut f, &g1);
    let (q2, mag) = rule(&mut f, &g2);
    let scale = mag.max(q2.norm()).max(T::min_positive_value());
    let change = (q2 - q1).norm() / scale;
    if !q1.re.is_finite() || !q1.im.is_finite() {
        return Err(Error::NonConvergence("non-finite quadrature value".into()));
    }
    if change > T::lit(DOUBLING_REJECT) {
        return Err(Error::NonConvergence(format!(
            "node doubling {n} -> {} changed the integral by {change:e} (relative)",
            2 * n
        )));
    }
    Ok(QuadratureValue {
        value: q1,
        doubling_change: change,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let gl = GaussLegendre::<f64>::new(10);
        for p in 0..20u32 {
            let s: f64 = gl
                .nodes
                .iter()
                .zip(&gl.weights)
                .map(|(&x, &w)| w * x.powi(p as i32))
                .sum();
            let exact = if p % 2 == 0 { 2.0 / (p as f64 + 1.0) } else { 0.0 };
            assert!((s - exact).abs() < 1e-14, "p = {p}: {s} vs {exact}");
        }
    }

    #[test]
    fn weights_sum_to_one_on_unit_interval() {
        for n in [16, 200, 400] {
            let g = RadialGrid::<f64>::new(n).unwrap();
            let s: f64 = g.w.iter().sum();
            assert!((s - 1.0).abs() < 1e-13);
            assert!(g.r.iter().all(|&r| r > 0.0 && r < 1.0));
        }
    }

    #[test]
    fn unit_integrand_gives_one_half() {
        let q = radial_quadrature(|_r: f64| Cx::new(1.0, 0.0), 200).unwrap();
        assert!((q.value.re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn r_squared_integrand_gives_one_quarter() {
        let q = radial_quadrature(|r: f64| Cx::new(r * r, 0.0), 200).unwrap();
        assert!((q.value.re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn too_few_nodes_rejected() {
        assert!(RadialGrid::<f64>::new(8).is_err());
    }

    #[test]
    fn rough_integrand_fails_doubling_check() {
        let r = radial_quadrature(|r: f64| Cx::new((400.0 * r).sin(), 0.0), 16);
        assert!(matches!(r, Err(Error::NonConvergence(_))));
    }
}
