use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{MAX_HORIZON, ROUTE_MERGE_TOL};
use crate::error::{Error, Result};
use crate::kernelspace::{apply_composition, merge_relative, norm, KernelVector};
use crate::scalar::Real;
use crate::symbols::AffineSymbol;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PseudoMode<T> {
    /// `xₙ = (δ/‖Tx‖) Σ_{j=1}^{n−1} T^{n−j} x`, starting from `x₁ = 0`.
    IterateSum,
    /// `x₁ = x`, `xₙ₊₁ = Txₙ + eₙ` with `eₙ` a seeded random multiple of a
    /// normalized kernel, `‖eₙ‖ ≤ amplitude · δ`.
    Perturbed { seed: u64, amplitude: T },
}

/// Positive `δ`-pseudo orbit of `C_φ`; `vectors[0]` is `x₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoOrbit<T> {
    pub symbol: AffineSymbol<T>,
    pub delta: T,
    pub vectors: Vec<KernelVector<T>>,
    /// `‖C_φ xₙ − xₙ₊₁‖` for `n = 1..N−1`.
    pub gaps: Vec<T>,
}

impl<T: Real> PseudoOrbit<T> {
    pub fn horizon(&self) -> usize {
        self.vectors.len()
    }

    /// `xₙ` with the one-based index of the definition.
    pub fn x(&self, n: usize) -> &KernelVector<T> {
        &self.vectors[n - 1]
    }

    pub fn max_gap(&self) -> T {
        self.gaps.iter().copied().fold(T::zero(), T::max)
    }
}

/// `‖f − g‖`, identifying points that agree to relative rounding.
pub(crate) fn route_distance<T: Real>(f: &KernelVector<T>, g: &KernelVector<T>) -> Result<T> {
    let diff = f.sub(g)?;
    Ok(norm(&merge_relative(&diff, T::lit(ROUTE_MERGE_TOL)).vector))
}

pub fn make_pseudo_orbit<T: Real>(
    phi: &AffineSymbol<T>,
    x: &KernelVector<T>,
    delta: T,
    horizon: usize,
    mode: PseudoMode<T>,
) -> Result<PseudoOrbit<T>> {
    if !(delta > T::zero()) {
        return Err(Error::InvalidParameter(format!("delta must be positive, got {delta}")));
    }
    if horizon == 0 || horizon > MAX_HORIZON {
        return Err(Error::InvalidParameter(format!("horizon {horizon} outside 1..={MAX_HORIZON}")));
    }
    let weight = x.weight();
    let mut vectors = Vec::with_capacity(horizon);
    match mode {
        PseudoMode::IterateSum => {
            let tx = apply_composition(phi, x);
            let tx_norm = norm(&tx);
            if !(tx_norm > T::zero()) {
                return Err(Error::ZeroImage);
            }
            let s = delta / tx_norm;
            let mut sum = KernelVector::zero(weight);
            vectors.push(sum.clone());
            for n in 1..horizon {
                let psi = phi.iterate(n as u64)?;
                sum = sum.add(&apply_composition(&psi, x))?;
                vectors.push(sum.scaled_real(s));
            }
        }
        PseudoMode::Perturbed { seed, amplitude } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut current = x.clone();
            vectors.push(current.clone());
            for _ in 1..horizon {
                let p = Complex::new(T::lit(rng.gen_range(0.2..3.0)), T::lit(rng.gen_range(-3.0..3.0)));
                let size = delta * amplitude * T::lit(rng.gen_range(0.0..1.0));
                let phase = T::lit(rng.gen_range(0.0..std::f64::consts::TAU));
                let e = KernelVector::unit_kernel(weight, p)?.scaled(Complex::from_polar(size, phase));
                current = apply_composition(phi, &current);
                if size > T::zero() {
                    current = current.add(&e)?;
                }
                vectors.push(current.clone());
            }
        }
    }
    let mut gaps = Vec::with_capacity(horizon.saturating_sub(1));
    for n in 0..horizon - 1 {
        let gap = route_distance(&apply_composition(phi, &vectors[n]), &vectors[n + 1])?;
        if !(gap <= delta * (T::one() + T::lit(1e-9))) {
            return Err(Error::InvariantViolated {
                what: "pseudo-orbit gap",
                observed: gap.as_f64(),
                bound: delta.as_f64(),
            });
        }
        gaps.push(gap);
    }
    Ok(PseudoOrbit { symbol: *phi, delta, vectors, gaps })
}
