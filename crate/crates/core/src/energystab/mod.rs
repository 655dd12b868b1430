//! Energy stability: the Euler–Lagrange problem for `1/R_E² = max I₂/I₁`, its
//! cubic factorization, the modified-Bessel determinant, the thresholds `R_m`
//! and `R_E`, and the decay rate `c_R`.

mod cubic;
mod determinant;
mod threshold;

pub use cubic::{cubic_coefficients, cubic_roots, CubicRoots};
pub use determinant::{el_determinant, el_determinant_normalized};
pub use threshold::{
    decay_rate, energy_threshold, first_dirichlet_eigenvalue, solve_rm, threshold_crossing, ElMode,
    EnergyIntegrals, EnergyReport, DEFAULT_M_MAX, MAX_ENERGY_ORDER, SCAN_PANELS, SCAN_WINDOW,
};
