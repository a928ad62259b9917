use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::orbit::random_kernel_vector;
use crate::error::Result;
use crate::kernelspace::KernelVector;
use crate::scalar::Real;
use crate::symbols::{AffineSymbol, Weight};

/// One `(a, b, α)` configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelEntry {
    pub a: f64,
    pub b_re: f64,
    pub b_im: f64,
    pub alpha: f64,
}

impl PanelEntry {
    pub const fn new(a: f64, b_re: f64, b_im: f64, alpha: f64) -> Self {
        Self { a, b_re, b_im, alpha }
    }

    pub fn symbol<T: Real>(&self) -> Result<AffineSymbol<T>> {
        AffineSymbol::from_parts(T::lit(self.a), T::lit(self.b_re), T::lit(self.b_im))
    }

    pub fn weight<T: Real>(&self) -> Result<Weight<T>> {
        Weight::new(T::lit(self.alpha))
    }
}

/// Twelve configurations reaching every branch of the classification:
/// `a = 1` with `b = 0`, `b ∈ iℝ∖{0}` and `Re b > 0`; `a < 1` and `a > 1`,
/// each with `b = 0`, `b ∈ iℝ∖{0}` and `Re b > 0`.
pub const PANEL: [PanelEntry; 12] = [
    PanelEntry::new(1.0, 0.0, 0.0, 0.0),
    PanelEntry::new(1.0, 0.0, 1.0, 0.0),
    PanelEntry::new(1.0, 1.0, 0.0, 0.0),
    PanelEntry::new(1.0, 1.0, 1.0, 2.3),
    PanelEntry::new(0.5, 0.0, 0.0, 0.0),
    PanelEntry::new(0.5, 0.0, 1.0, 1.0),
    PanelEntry::new(0.5, 1.0, 0.0, 0.0),
    PanelEntry::new(0.3, 2.0, 1.0, 1.0),
    PanelEntry::new(2.0, 0.0, 0.0, 0.0),
    PanelEntry::new(2.0, 0.0, 3.0, -0.5),
    PanelEntry::new(2.0, 1.0, 1.0, 0.0),
    PanelEntry::new(4.0, 0.5, 0.0, 1.0),
];

/// `k₁`, `k₂`, `k_{1+i}` and a seeded three-term combination.
pub fn default_test_vectors<T: Real>(weight: Weight<T>, seed: u64) -> Vec<KernelVector<T>> {
    let one = T::one();
    let mut out: Vec<KernelVector<T>> =
        [Complex::new(one, T::zero()), Complex::new(one + one, T::zero()), Complex::new(one, one)]
            .into_iter()
            .map(|w| KernelVector::kernel(weight, w).expect("fixed points lie in the half-plane"))
            .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out.push(random_kernel_vector(weight, 3, &mut rng));
    out
}
