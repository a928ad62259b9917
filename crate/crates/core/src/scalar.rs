//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
///
/// The associated tolerances are the precision-dependent thresholds used by
/// the dichotomies of the classification (`Re(b) = 0`, `a = 1`). They are
/// pinned for `f64`; the `f32` values are scaled to single precision.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute threshold under which `Re(b)` counts as exactly zero.
    const RE_ZERO_TOL: f64;
    /// Absolute threshold on `ln a` under which the multiplier counts as one.
    const UNIT_TOL: f64;

    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("integer representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn re_zero_tol() -> Self {
        Self::lit(Self::RE_ZERO_TOL)
    }

    #[inline]
    fn unit_tol() -> Self {
        Self::lit(Self::UNIT_TOL)
    }
}

impl Real for f64 {
    const RE_ZERO_TOL: f64 = 1e-12;
    const UNIT_TOL: f64 = 1e-12;
}

impl Real for f32 {
    const RE_ZERO_TOL: f64 = 1e-6;
    const UNIT_TOL: f64 = 1e-6;
}

/// Natural log of the Gamma function for real `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> T {
    T::lit(libm::lgamma(x.as_f64()))
}

/// Gamma function for real `x > 0`.
pub fn gamma<T: Real>(x: T) -> T {
    T::lit(libm::tgamma(x.as_f64()))
}
