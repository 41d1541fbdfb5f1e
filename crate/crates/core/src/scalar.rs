//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real floating-point scalar the physics is generic over.
///
/// Implemented for `f32` and `f64`. The tolerances quoted throughout the
/// crate assume `f64`; `f32` works for everything but only at single
/// precision.
pub trait Real:
    RealField + Copy + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Exact conversion of a small integer.
    #[inline]
    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable in scalar type")
    }

    /// Lossy view as `f64`, used for log-gamma and diagnostics.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Half of an integer stored doubled, e.g. `two_j / 2`.
    #[inline]
    fn half(twice: i64) -> Self {
        Self::int(twice) / Self::int(2)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Natural log of the gamma function.
pub(crate) fn ln_gamma<T: Real>(x: T) -> T {
    T::of(statrs::function::gamma::ln_gamma(x.as_f64()))
}

/// `ln Γ(n + a + 1) − ln Γ(n + 1)`, accumulated term by term so that the
/// large common part cancels exactly.
pub(crate) fn ln_gamma_ratio<T: Real>(n: usize, a: T) -> T {
    (1..=n).fold(ln_gamma(a + T::one()), |acc, i| acc + (a / T::of(i as f64)).ln_1p())
}

/// `ln(hi! / lo!)` for integers `lo <= hi`.
pub(crate) fn ln_factorial_ratio<T: Real>(hi: u32, lo: u32) -> T {
    (lo + 1..=hi).fold(T::zero(), |acc, i| acc + T::int(i as i64).ln())
}
