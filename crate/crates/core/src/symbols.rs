//! Affine self-maps `φ(w) = a·w + b` of the right half-plane and the weight
//! parameter `α` of the Bergman space they act on.
//!
//! The multiplier is stored as `ln a`, so iterates of order up to `10⁴` keep
//! an exact multiplier exponent even where `aⁿ` itself leaves the range of
//! the scalar type.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest iterate order accepted by [`AffineSymbol::iterate`].
pub const MAX_ITERATE: u64 = 1_000_000;

/// Bergman weight `α > −1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weight<T> {
    alpha: T,
}

impl<T: Real> Weight<T> {
    pub fn new(alpha: T) -> Result<Self> {
        if alpha.is_finite() && alpha > -T::one() {
            Ok(Self { alpha })
        } else {
            Err(Error::InvalidWeight { alpha: alpha.as_f64() })
        }
    }

    #[inline]
    pub fn alpha(self) -> T {
        self.alpha
    }

    /// `α + 2`, the exponent of the reproducing kernel.
    #[inline]
    pub fn kernel_exponent(self) -> T {
        self.alpha + T::lit(2.0)
    }

    /// `(α + 2)/2`, the exponent in `‖C_φ‖ = a^{−(α+2)/2}`.
    #[inline]
    pub fn norm_exponent(self) -> T {
        self.kernel_exponent() / T::lit(2.0)
    }

    /// `2^α (α + 1)`, the numerator of the reproducing kernel.
    #[inline]
    pub fn kernel_constant(self) -> T {
        T::lit(2.0).powf(self.alpha) * (self.alpha + T::one())
    }
}

/// Where an affine symbol fixes points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedPoint<T> {
    /// `a ≠ 1`: the unique finite fixed point `b/(1−a)`.
    Finite { point: Complex<T>, interior: bool },
    /// `a = 1`, `b ≠ 0`: only `∞` is fixed.
    None,
    /// The identity map.
    Everywhere,
}

impl<T: Real> FixedPoint<T> {
    /// The fixed point when it lies in the open right half-plane.
    pub fn interior(self) -> Option<Complex<T>> {
        match self {
            FixedPoint::Finite { point, interior: true } => Some(point),
            _ => None,
        }
    }
}

/// `φ(w) = a·w + b` with `a > 0` and `Re(b) ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineSymbol<T> {
    log_a: T,
    b: Complex<T>,
}

impl<T: Real> AffineSymbol<T> {
    /// Validates `a > 0` and `Re(b) ≥ 0`. A real part within the zero
    /// threshold of `0` is snapped to exactly `0`.
    pub fn new(a: T, b: Complex<T>) -> Result<Self> {
        if !(a.is_finite() && a > T::zero()) {
            return Err(Error::InvalidMultiplier { a: a.as_f64() });
        }
        Self::from_log_multiplier(a.ln(), b)
    }

    pub fn from_parts(a: T, b_re: T, b_im: T) -> Result<Self> {
        Self::new(a, Complex::new(b_re, b_im))
    }

    pub fn from_log_multiplier(log_a: T, b: Complex<T>) -> Result<Self> {
        if !log_a.is_finite() {
            return Err(Error::InvalidMultiplier { a: log_a.exp().as_f64() });
        }
        if !(b.re.is_finite() && b.im.is_finite()) {
            return Err(Error::NonFiniteTranslation);
        }
        let tol = T::re_zero_tol();
        if b.re < -tol {
            return Err(Error::NegativeTranslation { re: b.re.as_f64() });
        }
        let re = if b.re.abs() <= tol { T::zero() } else { b.re };
        Ok(Self { log_a, b: Complex::new(re, b.im) })
    }

    pub fn identity() -> Self {
        Self { log_a: T::zero(), b: Complex::new(T::zero(), T::zero()) }
    }

    #[inline]
    pub fn a(&self) -> T {
        self.log_a.exp()
    }

    #[inline]
    pub fn log_a(&self) -> T {
        self.log_a
    }

    #[inline]
    pub fn b(&self) -> Complex<T> {
        self.b
    }

    /// `Re(b) = 0` up to the zero threshold.
    #[inline]
    pub fn has_imaginary_translation(&self) -> bool {
        self.b.re <= T::re_zero_tol()
    }

    /// `a = 1` up to the unit threshold on `ln a`.
    #[inline]
    pub fn multiplier_is_one(&self) -> bool {
        self.log_a.abs() <= T::unit_tol()
    }

    #[inline]
    pub fn multiplier_below_one(&self) -> bool {
        self.log_a < -T::unit_tol()
    }

    #[inline]
    pub fn multiplier_above_one(&self) -> bool {
        self.log_a > T::unit_tol()
    }

    pub fn is_identity(&self) -> bool {
        self.multiplier_is_one() && self.b.norm() <= T::re_zero_tol()
    }

    #[inline]
    pub fn apply(&self, w: Complex<T>) -> Complex<T> {
        w * self.a() + self.b
    }

    /// `self ∘ inner`, i.e. `w ↦ self(inner(w))`.
    pub fn compose(&self, inner: &Self) -> Self {
        Self { log_a: self.log_a + inner.log_a, b: inner.b * self.a() + self.b }
    }

    /// The `n`-fold iterate `φ^[n]`.
    pub fn iterate(&self, n: u64) -> Result<Self> {
        if n > MAX_ITERATE {
            return Err(Error::IterateTooLarge { n, cap: MAX_ITERATE });
        }
        if n == 0 {
            return Ok(Self::identity());
        }
        let nf = T::from_u64(n).expect("iterate order representable");
        let log_a = nf * self.log_a;
        let zero = Complex::new(T::zero(), T::zero());
        let b = if self.b == zero {
            zero
        } else if self.log_a == T::zero() {
            self.b * nf
        } else {
            // (1 − aⁿ)/(1 − a) = expm1(n ln a)/expm1(ln a)
            let ratio = log_a.exp_m1() / self.log_a.exp_m1();
            self.b * ratio
        };
        if !(log_a.is_finite() && b.re.is_finite() && b.im.is_finite()) {
            return Err(Error::Overflow { what: "iterate translation" });
        }
        Ok(Self { log_a, b })
    }

    /// `φ^{-1}(w) = (w − b)/a`, a self-map of `ℂ₊` only when `Re(b) = 0`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.has_imaginary_translation() {
            return Err(Error::NotInvertible { re: self.b.re.as_f64() });
        }
        let inv_a = (-self.log_a).exp();
        Ok(Self { log_a: -self.log_a, b: Complex::new(T::zero(), -self.b.im * inv_a) })
    }

    pub fn fixed_point(&self) -> FixedPoint<T> {
        if self.log_a == T::zero() {
            if self.b.norm() == T::zero() {
                FixedPoint::Everywhere
            } else {
                FixedPoint::None
            }
        } else {
            // 1 − a = −expm1(ln a)
            let point = self.b / (-self.log_a.exp_m1());
            FixedPoint::Finite { point, interior: point.re > T::zero() }
        }
    }

    /// `φ′(∞) = lim w/φ(w) = 1/a`.
    pub fn angular_derivative_at_infinity(&self) -> T {
        (-self.log_a).exp()
    }
}
