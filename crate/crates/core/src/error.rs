use thiserror::Error;

/// Errors raised across the crate. Numeric payloads are reported in `f64`
/// regardless of the scalar type in use.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("multiplier a must be a finite positive number, got {a}")]
    InvalidMultiplier { a: f64 },
    #[error("translation must satisfy Re(b) >= 0, got Re(b) = {re}")]
    NegativeTranslation { re: f64 },
    #[error("translation must be finite")]
    NonFiniteTranslation,
    #[error("weight must satisfy alpha > -1, got alpha = {alpha}")]
    InvalidWeight { alpha: f64 },
    #[error("composition operator is not invertible: Re(b) = {re} > 0")]
    NotInvertible { re: f64 },
    #[error("iterate order {n} exceeds the cap {cap}")]
    IterateTooLarge { n: u64, cap: u64 },
    #[error("overflow while computing {what}")]
    Overflow { what: &'static str },
    #[error("point {re}{im:+}i lies outside the open right half-plane")]
    Domain { re: f64, im: f64 },
    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: f64, right: f64 },
    #[error("length mismatch: {points} points vs {coeffs} coefficients")]
    LengthMismatch { points: usize, coeffs: usize },
    #[error("profile term has decay with Re(c) = {re} <= 0")]
    NonDecayingProfile { re: f64 },
    #[error("profile exponent beta = {beta} must exceed alpha/2 = {half_alpha}")]
    ProfileExponent { beta: f64, half_alpha: f64 },
    #[error("divergent Gamma integral: exponent {s} <= 0")]
    DivergentIntegral { s: f64 },
    #[error("quadrature did not converge: successive levels differ by {gap:e} (tolerance {tol:e})")]
    QuadratureNotConverged { gap: f64, tol: f64 },
    #[error("vector vanishes at every candidate target point")]
    ZeroAtTarget,
    #[error("image of the seed vector is zero")]
    ZeroImage,
    #[error("symbol is outside the regime required by {operation}")]
    RegimeMismatch { operation: &'static str },
    #[error("symbol has no fixed point in the open right half-plane")]
    NoInteriorFixedPoint,
    #[error("non-finite value encountered at step {step}")]
    NonFinite { step: usize },
    #[error("{what}: observed {observed:e} exceeds {bound:e}")]
    InvariantViolated { what: &'static str, observed: f64, bound: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<V> = std::result::Result<V, Error>;
