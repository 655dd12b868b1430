//! Linear stability: dispersion relation, eigenvalues `β_{m,j}(R)`, the critical
//! Reynolds number, and eigen/adjoint-eigenfunctions in closed form.

mod dispersion;
mod mode;
mod params;

pub use dispersion::{
    beta_spectrum, critical_constant, critical_reynolds, dispersion, dispersion_phase,
    dispersion_reduced, dispersion_reduced_complex, dispersion_reduced_scaled, lambda_lower_bound,
    lambda_mu, lambda_upper_bound, m0_spectrum, pes_slope, solve_beta, solve_lambda_m1,
    verify_lambda_bounds, AxisymmetricEigen, AxisymmetricFamily, LambdaBound, MAX_ORDER,
};
pub use mode::{build_mode, build_mode_on, mode_at, SpectralMode};
pub(crate) use mode::null_vector;
pub use params::FluidParams;

#[cfg(test)]
mod tests;
