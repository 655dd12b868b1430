//! Stability of Poiseuille flow of a second-grade fluid in a circular pipe.
//!
//! The crate covers the linear spectrum and critical Reynolds number
//! ([`linstab`]), the dynamic-transition number at criticality
//! ([`transition`]), and the energy-stability threshold ([`energystab`]), on top
//! of an integer-order cylinder-function kernel ([`specfun`]).
//!
//! All numerical code is generic over a [`Real`] scalar; the aliases below fix
//! it to `f64`.

pub mod energystab;
pub mod error;
pub mod field;
pub mod linstab;
pub mod profile;
pub mod quadrature;
pub mod roots;
pub mod scalar;
pub mod specfun;
pub mod transition;

pub use error::{Error, Result};
pub use scalar::{Cx, Real};

pub type Complex = Cx<f64>;
pub type FluidParams = linstab::FluidParams<f64>;
pub type SpectralMode = linstab::SpectralMode<f64>;
pub type RadialProfile = profile::RadialProfile<f64>;
pub type AzimuthalField = field::AzimuthalField<f64>;
pub type BesselZeroTable = specfun::BesselZeroTable<f64>;
pub type TransitionReport = transition::TransitionReport<f64>;
pub type TransitionOptions = transition::TransitionOptions<f64>;
pub type ReducedTrajectory = transition::ReducedTrajectory<f64>;
pub type BifurcatedSolution = transition::BifurcatedSolution<f64>;
pub type CubicRoots = energystab::CubicRoots<f64>;
pub type EnergyReport = energystab::EnergyReport<f64>;
