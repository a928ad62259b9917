//! Affine composition operators `C_φ f = f ∘ φ`, `φ(w) = aw + b`, on the
//! weighted Bergman spaces `A²_α` of the right half-plane.
//!
//! Elements of `A²_α` are handled as finite spans of reproducing kernels, on
//! which `C_φ` and its adjoint act exactly. The crate classifies `C_φ`
//! (norm, spectrum, invertibility, normality, expansivity, shadowing,
//! Cesàro boundedness), checks the Laplace model numerically, and builds the
//! orbit and pseudo-orbit witnesses behind each dynamical property.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar type.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod export;
pub mod kernelspace;
pub mod laplace;
pub mod quadrature;
pub mod scalar;
pub mod suite;
pub mod symbols;
pub mod wire;

pub use dynamics::{classify, operator_norm, spectrum, Citation, Cited, DynamicsReport, Spectrum, Truth};
pub use error::{Error, Result};
pub use kernelspace::{
    apply_adjoint, apply_composition, evaluate, inner_product, kernel_eval, kernel_norm, norm, KernelTerm, KernelVector,
};
pub use laplace::{laplace_transform, LaplaceImage, ProfileFunction, ProfileTerm};
pub use scalar::Real;
pub use symbols::{AffineSymbol, FixedPoint, Weight};

pub type AffineSymbol64 = AffineSymbol<f64>;
pub type AffineSymbol32 = AffineSymbol<f32>;
pub type Weight64 = Weight<f64>;
pub type Weight32 = Weight<f32>;
pub type KernelVector64 = KernelVector<f64>;
pub type KernelVector32 = KernelVector<f32>;
pub type ProfileFunction64 = ProfileFunction<f64>;
pub type ProfileFunction32 = ProfileFunction<f32>;
pub type DynamicsReport64 = DynamicsReport<f64>;
pub type DynamicsReport32 = DynamicsReport<f32>;
pub type Spectrum64 = Spectrum<f64>;
pub type Complex64 = num_complex::Complex<f64>;
