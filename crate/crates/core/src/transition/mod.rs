//! Dynamic transition at `R_c`: the quadratic operators `J`, `H`, `H_s`,
//! center-manifold coefficients, the transition number `A`, the reduced
//! amplitude equation, and the bifurcated periodic solution.

mod number;
mod ops;
mod periodic;
mod reduced;

pub use number::{
    field_samples, transition_number, transition_number_with, Classification, InteractionTerm,
    TransitionContext, TransitionOptions, TransitionReport, DEGENERATE_TOL, MAX_TRUNCATION,
};
pub use ops::{advection_j, bilinear_h, bilinear_hs, scalar_inner, FieldSamples, NonlinearForm, SampledScalar};
pub use periodic::{periodic_field, BifurcatedSolution, PolarField, PolarGrid};
pub use reduced::{integrate_reduced, LimitCycleEstimate, ReducedTrajectory};
