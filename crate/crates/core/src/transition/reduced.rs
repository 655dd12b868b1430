use crate::error::{Error, Result};
use crate::scalar::{Cx, Real};

/// Outcome of integrating `dz/dt = βz + A|z|²z`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedTrajectory<T: Real> {
    pub times: Vec<T>,
    pub states: Vec<Cx<T>>,
    /// Set when `|z|` left the escape ball, became non-finite, or the step underflowed.
    pub diverged: bool,
    /// Time at which divergence was detected.
    pub escape_time: Option<T>,
}

/// Modulus and rotation measured on the tail of a trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitCycleEstimate<T> {
    pub modulus: T,
    /// `dγ/dt`, the phase speed of `z = ρe^{iγ}`.
    pub angular_speed: T,
    /// `−2π/(dγ/dt)`, sharing the sign convention of `2π Re A/(Im A β)`.
    pub period: T,
}

impl<T: Real> ReducedTrajectory<T> {
    pub fn last(&self) -> Cx<T> {
        *self.states.last().expect("trajectory holds the initial state")
    }

    /// Averages over samples with `t >= t_from`.
    pub fn limit_cycle(&self, t_from: T) -> Result<LimitCycleEstimate<T>> {
        let idx: Vec<usize> = (0..self.times.len()).filter(|&i| self.times[i] >= t_from).collect();
        if idx.len() < 3 {
            return Err(Error::Range("too few samples after t_from".into()));
        }
        let mut rho = T::zero();
        for &i in &idx {
            rho = rho + self.states[i].norm();
        }
        rho = rho / T::from_usize(idx.len()).unwrap();
        let mut gamma = T::zero();
        for w in idx.windows(2) {
            let d = (self.states[w[1]] / self.states[w[0]]).arg();
            gamma = gamma + d;
        }
        let span = self.times[*idx.last().unwrap()] - self.times[idx[0]];
        let speed = gamma / span;
        Ok(LimitCycleEstimate { modulus: rho, angular_speed: speed, period: -T::lit(2.0) * T::PI() / speed })
    }
}

fn rhs<T: Real>(z: Cx<T>, beta: T, a: Cx<T>) -> Cx<T> {
    z * beta + a * z * z.norm_sqr()
}

/// Adaptive Dormand–Prince 5(4) integration of `dz/dt = βz + A|z|²z` on
/// `[0, t_end]`, recording accepted steps no closer than `dt` apart.
///
/// Steps are capped at `20 dt` so consecutive samples resolve the rotation.
pub fn integrate_reduced<T: Real>(z0: Cx<T>, beta: T, a: Cx<T>, dt: T, t_end: T) -> Result<ReducedTrajectory<T>> {
    if !(dt > T::zero()) || !(t_end > T::zero()) {
        return Err(Error::InvalidParameter("dt and t_end must be positive".into()));
    }
    let bound = T::lit(0.01) / beta.abs().max(a.norm() * z0.norm_sqr());
    if dt > bound * T::lit(1.0 + 1e-12) {
        return Err(Error::InvalidParameter(format!("dt = {dt} exceeds 0.01/max(|β|, |A||z0|²) = {bound}")));
    }
    let l = |x: f64| T::lit(x);
    let k_a: [&[T]; 7] = [
        &[],
        &[l(1.0 / 5.0)],
        &[l(3.0 / 40.0), l(9.0 / 40.0)],
        &[l(44.0 / 45.0), l(-56.0 / 15.0), l(32.0 / 9.0)],
        &[l(19372.0 / 6561.0), l(-25360.0 / 2187.0), l(64448.0 / 6561.0), l(-212.0 / 729.0)],
        &[l(9017.0 / 3168.0), l(-355.0 / 33.0), l(46732.0 / 5247.0), l(49.0 / 176.0), l(-5103.0 / 18656.0)],
        &[l(35.0 / 384.0), l(0.0), l(500.0 / 1113.0), l(125.0 / 192.0), l(-2187.0 / 6784.0), l(11.0 / 84.0)],
    ];
    let b5 = [l(35.0 / 384.0), l(0.0), l(500.0 / 1113.0), l(125.0 / 192.0), l(-2187.0 / 6784.0), l(11.0 / 84.0), l(0.0)];
    let b4 = [
        l(5179.0 / 57600.0),
        l(0.0),
        l(7571.0 / 16695.0),
        l(393.0 / 640.0),
        l(-92097.0 / 339200.0),
        l(187.0 / 2100.0),
        l(1.0 / 40.0),
    ];
    let (rtol, atol) = (l(1e-10), l(1e-14));
    let escape = l(10.0) * z0.norm().max((beta.abs() / a.re.abs()).sqrt());
    let h_min = t_end * l(1e-14);
    let h_max = dt * l(20.0);

    let mut t = T::zero();
    let mut z = z0;
    let mut h = dt;
    let mut times = vec![t];
    let mut states = vec![z];
    let mut next_record = dt;
    while t < t_end {
        if t + h > t_end {
            h = t_end - t;
        }
        let mut k = [Cx::new(T::zero(), T::zero()); 7];
        for s in 0..7 {
            let mut y = z;
            for (q, coef) in k_a[s].iter().enumerate() {
                y = y + k[q] * (*coef * h);
            }
            k[s] = rhs(y, beta, a);
        }
        let mut z5 = z;
        let mut err = Cx::new(T::zero(), T::zero());
        for s in 0..7 {
            z5 = z5 + k[s] * (b5[s] * h);
            err = err + k[s] * ((b5[s] - b4[s]) * h);
        }
        let tol = atol + rtol * z.norm().max(z5.norm());
        let ratio = err.norm() / tol;
        if !(z5.re.is_finite() && z5.im.is_finite()) || ratio.is_nan() {
            return Ok(ReducedTrajectory { times, states, diverged: true, escape_time: Some(t) });
        }
        if ratio <= T::one() {
            t = t + h;
            z = z5;
            if t >= next_record || t >= t_end {
                times.push(t);
                states.push(z);
                next_record = t + dt;
            }
            if z.norm() > escape {
                return Ok(ReducedTrajectory { times, states, diverged: true, escape_time: Some(t) });
            }
        }
        let factor = if ratio == T::zero() { l(5.0) } else { (l(0.9) * ratio.powf(l(-0.2))).min(l(5.0)).max(l(0.2)) };
        h = (h * factor).min(h_max);
        if h < h_min {
            return Ok(ReducedTrajectory { times, states, diverged: true, escape_time: Some(t) });
        }
    }
    Ok(ReducedTrajectory { times, states, diverged: false, escape_time: None })
}
