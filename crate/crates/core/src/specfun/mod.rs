//! Cylinder-function kernel: `J`, `Y`, `I`, `K` of integer order and complex
//! argument, their derivatives, and zeros of `J_k`.
//!
//! `I_n` is computed by Miller's backward recurrence normalized with
//! `e^z = I_0 + 2 Σ I_k` (power series for `|z| <= 5`), and `J_n(z) = i^n I_n(−iz)`.
//! `K_n` comes from its small-argument series or Temme's continued fraction and
//! forward recurrence, and `Y_n(z) = i J_n(z) − (2/π) i^{−n} K_n(−iz)`.

mod bessel;
mod zeros;

pub use bessel::{
    bessel_i, bessel_j, bessel_j_reduced, bessel_j_reduced_complex, cross_product_fn, cross_product_reduced, cyl_deriv,
    cyl_eval, cyl_sequence, real_pair, CylinderKind, SERIES_RADIUS,
};
pub(crate) use bessel::value_and_deriv;
#[cfg(test)]
pub(crate) use bessel::{i_miller, i_series};
pub use zeros::{bessel_j_zero, BesselZeroTable, MAX_ZERO_INDEX, MAX_ZERO_ORDER};
