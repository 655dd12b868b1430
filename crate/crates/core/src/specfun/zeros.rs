//! Zeros of `J_k` on the positive real axis.

use crate::error::{Error, Result};
use crate::roots::brent;
use crate::scalar::Real;
use crate::specfun::bessel::{bessel_j, real_pair, CylinderKind};

/// Largest order supported by [`bessel_j_zero`].
pub const MAX_ZERO_ORDER: u32 = 20;
/// Largest zero index supported by [`bessel_j_zero`].
pub const MAX_ZERO_INDEX: u32 = 50;

/// Ascending positive zeros `α_{k,1} < α_{k,2} < …` of `J_k`.
#[derive(Clone, Debug)]
pub struct BesselZeroTable<T> {
    order: u32,
    zeros: Vec<T>,
}

impl<T: Real> BesselZeroTable<T> {
    /// First `count` positive zeros of `J_order`.
    pub fn new(order: u32, count: usize) -> Result<Self> {
        let k = order as i32;
        let step = T::lit(0.25);
        let mut x = T::from_u32(order).unwrap() + T::lit(0.5);
        let mut fx = bessel_j(k, x)?;
        let mut zeros = Vec::with_capacity(count);
        let limit = T::from_usize(count).unwrap() * T::lit(4.0) + T::from_u32(order).unwrap() + T::lit(10.0);
        while zeros.len() < count {
            let xn = x + step;
            if xn > limit {
                return Err(Error::RootNotFound(format!(
                    "only {} zeros of J_{order} below {limit}",
                    zeros.len()
                )));
            }
            let fxn = bessel_j(k, xn)?;
            if (fx > T::zero()) != (fxn > T::zero()) {
                let mut z = brent(|t| bessel_j(k, t), x, xn, T::epsilon())?;
                for _ in 0..2 {
                    let (j, j1) = real_pair(CylinderKind::J, order, z)?;
                    let d = T::from_u32(order).unwrap() / z * j - j1;
                    if d != T::zero() {
                        let zn = z - j / d;
                        if zn > x && zn < xn {
                            z = zn;
                        }
                    }
                }
                zeros.push(z);
            }
            x = xn;
            fx = fxn;
        }
        Ok(Self { order, zeros })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Zero `α_{k,j}`, 1-based.
    pub fn zero(&self, j: usize) -> Option<T> {
        j.checked_sub(1).and_then(|i| self.zeros.get(i).copied())
    }

    pub fn zeros(&self) -> &[T] {
        &self.zeros
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }
}

/// The `j`-th positive zero of `J_k` for `k <= 20`, `1 <= j <= 50`.
pub fn bessel_j_zero<T: Real>(k: u32, j: u32) -> Result<T> {
    if k > MAX_ZERO_ORDER || j == 0 || j > MAX_ZERO_INDEX {
        return Err(Error::Range(format!(
            "zero (k, j) = ({k}, {j}) outside k <= {MAX_ZERO_ORDER}, 1 <= j <= {MAX_ZERO_INDEX}"
        )));
    }
    let t = BesselZeroTable::new(k, j as usize)?;
    Ok(t.zero(j as usize).expect("table holds j zeros"))
}
