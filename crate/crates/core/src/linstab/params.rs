use crate::error::{Error, Result};
use crate::scalar::Real;

/// Material constant `ε >= 0` and Reynolds number `R > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FluidParams<T> {
    pub epsilon: T,
    pub reynolds: T,
}

impl<T: Real> FluidParams<T> {
    pub fn new(epsilon: T, reynolds: T) -> Result<Self> {
        if !epsilon.is_finite() || epsilon < T::zero() {
            return Err(Error::InvalidParameter(format!("epsilon must be >= 0, got {epsilon}")));
        }
        if !reynolds.is_finite() || reynolds <= T::zero() {
            return Err(Error::InvalidParameter(format!("Reynolds number must be > 0, got {reynolds}")));
        }
        Ok(Self { epsilon, reynolds })
    }

    /// Same material, different Reynolds number.
    pub fn with_reynolds(&self, reynolds: T) -> Result<Self> {
        Self::new(self.epsilon, reynolds)
    }

    /// `√ε · |m| · R`.
    pub fn coupling(&self, m: u32) -> T {
        self.epsilon.sqrt() * T::from_u32(m).unwrap() * self.reynolds
    }
}
