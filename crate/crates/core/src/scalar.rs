use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the numerical kernels are generic over.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over a [`Real`] scalar.
pub type Cx<T> = Complex<T>;

#[inline]
pub(crate) fn cx<T: Real>(re: T, im: T) -> Cx<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn re<T: Real>(x: T) -> Cx<T> {
    Complex::new(x, T::zero())
}

/// `i^n` for any integer `n`.
pub(crate) fn i_pow<T: Real>(n: i64) -> Cx<T> {
    match n.rem_euclid(4) {
        0 => cx(T::one(), T::zero()),
        1 => cx(T::zero(), T::one()),
        2 => cx(-T::one(), T::zero()),
        _ => cx(T::zero(), -T::one()),
    }
}

/// Kahan-compensated accumulator for complex sums.
#[derive(Clone, Copy, Debug)]
pub(crate) struct KahanSum<T: Real> {
    sum: Cx<T>,
    comp: Cx<T>,
}

impl<T: Real> KahanSum<T> {
    pub(crate) fn new() -> Self {
        Self {
            sum: Cx::new(T::zero(), T::zero()),
            comp: Cx::new(T::zero(), T::zero()),
        }
    }

    pub(crate) fn add(&mut self, x: Cx<T>) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> Cx<T> {
        self.sum
    }
}
