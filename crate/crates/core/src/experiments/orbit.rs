use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::MAX_HORIZON;
use crate::dynamics::operator_norm;
use crate::error::{Error, Result};
use crate::kernelspace::{apply_composition_scaled, evaluate, kernel_norm, log_norm, norm, norm_sq_raw, KernelVector};
use crate::scalar::Real;
use crate::symbols::{AffineSymbol, Weight};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitRow<T> {
    pub n: usize,
    /// `‖C_φⁿ f‖`, infinite once it leaves the floating-point range.
    pub norm: T,
    /// `ln ‖C_{φ^[n]} f‖` via the closed-form iterate.
    pub log_norm: T,
    /// `ln ‖C_φ(⋯C_φ f)‖` via `n` successive applications.
    pub log_norm_successive: T,
    /// `|‖·‖_successive/‖·‖_iterate − 1|`.
    pub disagreement: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitReport<T> {
    pub rows: Vec<OrbitRow<T>>,
    pub max_disagreement: T,
}

impl<T: Real> OrbitReport<T> {
    pub fn log_norms(&self) -> impl Iterator<Item = T> + '_ {
        self.rows.iter().map(|r| r.log_norm)
    }
}

fn check_horizon(n: usize) -> Result<()> {
    if n > MAX_HORIZON {
        Err(Error::InvalidParameter(format!("horizon {n} exceeds {MAX_HORIZON}")))
    } else {
        Ok(())
    }
}

fn check_nonzero<T: Real>(f: &KernelVector<T>) -> Result<()> {
    if f.is_empty() || !(norm_sq_raw(f) > T::zero()) {
        Err(Error::InvalidParameter("vector must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// `ln ‖C_ψ f‖` for `ψ(w) = Aw + B`, through
/// `‖C_ψ f‖ = A^{−(α+2)/2} ‖Σ cᵢ k_{wᵢ + Re B}‖`.
///
/// Dilations act on kernels by the scalar `A^{(α+2)/2}` and imaginary
/// translations unitarily, so neither is ever applied to the points. This
/// keeps long orbits accurate where the image points would otherwise
/// cluster at the boundary.
pub fn log_norm_image<T: Real>(psi: &AffineSymbol<T>, f: &KernelVector<T>) -> T {
    let shift = Complex::new(psi.b().re, T::zero());
    -f.weight().norm_exponent() * psi.log_a() + log_norm(&f.translated(shift))
}

/// `‖C_φf‖/‖f‖` through the explicit image `a^{−(α+2)} Σ cᵢ k_{(wᵢ+b̄)/a}`
/// and its Gram sum.
pub fn norm_ratio<T: Real>(phi: &AffineSymbol<T>, f: &KernelVector<T>) -> T {
    let (log_scale, moved) = apply_composition_scaled(phi, f);
    (log_scale + log_norm(&moved) - log_norm(f)).exp()
}

/// `‖C_φⁿ f‖` for `n = 0..=horizon`, by the closed-form iterate and by
/// successive applications of `C_φ`.
pub fn orbit_norms<T: Real>(phi: &AffineSymbol<T>, f: &KernelVector<T>, horizon: usize) -> Result<OrbitReport<T>> {
    check_horizon(horizon)?;
    check_nonzero(f)?;
    let mut rows = Vec::with_capacity(horizon + 1);
    // C_φ C_ψ = C_{ψ∘φ}, ψ∘φ(w) = aA w + (A b + B); only Re B moves points
    let mut shifted = f.clone();
    let mut log_a_acc = T::zero();
    let mut max_disagreement = T::zero();
    let half = f.weight().norm_exponent();
    for n in 0..=horizon {
        if n > 0 {
            let step = Complex::new(log_a_acc.exp() * phi.b().re, T::zero());
            shifted = shifted.translated(step);
            log_a_acc += phi.log_a();
        }
        let psi = phi.iterate(n as u64).map_err(|_| Error::NonFinite { step: n })?;
        let direct = log_norm_image(&psi, f);
        let successive = -half * log_a_acc + log_norm(&shifted);
        if !direct.is_finite() || !successive.is_finite() {
            return Err(Error::NonFinite { step: n });
        }
        let disagreement = (successive - direct).exp_m1().abs();
        max_disagreement = max_disagreement.max(disagreement);
        rows.push(OrbitRow { n, norm: direct.exp(), log_norm: direct, log_norm_successive: successive, disagreement });
    }
    Ok(OrbitReport { rows, max_disagreement })
}

/// Random `Σ cᵢ k_{wᵢ}` with `Re wᵢ ∈ [0.2, 3]`, `Im wᵢ ∈ [−3, 3]` and
/// coefficient components in `[−1, 1]`.
pub fn random_kernel_vector<T: Real, R: Rng>(weight: Weight<T>, terms: usize, rng: &mut R) -> KernelVector<T> {
    let mut f = KernelVector::zero(weight);
    for _ in 0..terms {
        let w = Complex::new(T::lit(rng.gen_range(0.2..3.0)), T::lit(rng.gen_range(-3.0..3.0)));
        let c = Complex::new(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0)));
        f.push(c, w).expect("sampled point lies in the half-plane");
    }
    f
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimateReport<T> {
    /// `c = a^{−(α+2)/2}`.
    pub c: T,
    /// Whether the equality case `Re(b) = 0` applies.
    pub equality: bool,
    pub samples: usize,
    /// Near-zero draws excluded from the ratios.
    pub skipped: usize,
    /// `max |ρ/c − 1|` with `ρ = ‖C_φf‖/‖f‖` (equality case only).
    pub max_equality_violation: T,
    /// `max (ρ/c − 1)⁺`.
    pub max_inequality_violation: T,
    pub max_ratio: T,
}

/// Checks `‖C_φf‖ = c‖f‖` (`Re b = 0`) or `‖C_φf‖ ≤ c‖f‖` on random vectors.
pub fn verify_norm_estimates<T: Real>(
    phi: &AffineSymbol<T>,
    weight: Weight<T>,
    sample_count: usize,
    seed: u64,
) -> NormEstimateReport<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = operator_norm(phi, weight);
    let log_c = c.ln();
    let equality = phi.has_imaginary_translation();
    let mut report = NormEstimateReport {
        c,
        equality,
        samples: 0,
        skipped: 0,
        max_equality_violation: T::zero(),
        max_inequality_violation: T::zero(),
        max_ratio: T::zero(),
    };
    for _ in 0..sample_count {
        let terms = rng.gen_range(1..=4);
        let f = random_kernel_vector(weight, terms, &mut rng);
        if !(norm_sq_raw(&f) > T::lit(1e-10) * f.diagonal_mass()) {
            report.skipped += 1;
            continue;
        }
        report.samples += 1;
        let rel = (norm_ratio(phi, &f).ln() - log_c).exp_m1();
        report.max_ratio = report.max_ratio.max((rel + T::one()) * c);
        report.max_inequality_violation = report.max_inequality_violation.max(rel);
        if equality {
            report.max_equality_violation = report.max_equality_violation.max(rel.abs());
        }
    }
    report
}

/// Retry grid for the base point of the lower estimate.
pub const Z0_GRID: [(f64, f64); 10] = [
    (1.0, 0.0),
    (2.0, 0.0),
    (1.0, 1.0),
    (2.0, -1.0),
    (0.5, 0.0),
    (3.0, 0.0),
    (0.5, 2.0),
    (1.0, -3.0),
    (4.0, 1.0),
    (0.25, 0.0),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerEstimateRow<T> {
    pub n: usize,
    /// `|g(ψₙ(z₀))|` with `ψₙ(z₀) = φ^[n](z₀ a^{−n}) = z₀ + b(1−aⁿ)/(1−a)`.
    pub psi_value: T,
    /// `‖C_φⁿ g‖ · a^{(α+2)n/2}`.
    pub scaled_norm: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowerEstimate<T> {
    pub delta: T,
    pub z0: Complex<T>,
    pub z1: Complex<T>,
    /// Index of `z0` in the retry sequence; 0 is the requested point.
    pub attempt: usize,
    /// Smallest `n` from which `|g(ψₘ(z₀))| > |g(z₁)|/2` for every tested `m`.
    pub n0: usize,
    pub rows: Vec<LowerEstimateRow<T>>,
    /// `scaled_norm ≥ δ` for all rows with `n ≥ n0`.
    pub verified: bool,
}

/// `δ = |g(z₁)|/(2‖k_{z₀}‖)` with `z₁ = z₀ + b/(1−a)` for the normalized
/// `g`, and the range of `n` on which `‖C_φⁿg‖ ≥ δ a^{−(α+2)n/2}` holds.
pub fn lower_estimate_delta<T: Real>(
    phi: &AffineSymbol<T>,
    g: &KernelVector<T>,
    z0: Option<Complex<T>>,
    horizon: usize,
) -> Result<LowerEstimate<T>> {
    if !phi.multiplier_below_one() {
        return Err(Error::RegimeMismatch { operation: "lower_estimate_delta" });
    }
    check_horizon(horizon)?;
    check_nonzero(g)?;
    let weight = g.weight();
    let g = g.scaled_real(norm(g).recip());
    let one_minus_a = -phi.log_a().exp_m1();
    let shift = phi.b() / one_minus_a;

    let candidates =
        z0.into_iter().chain(Z0_GRID.iter().map(|&(re, im)| Complex::new(T::lit(re), T::lit(im)))).take(11);
    let mut chosen = None;
    for (attempt, z) in candidates.enumerate() {
        let z1 = z + shift;
        let gz1 = evaluate(&g, z1)?;
        let scale = kernel_norm(weight, z1)?;
        if gz1.norm() > T::lit(1e-14) * scale {
            chosen = Some((attempt, z, z1, gz1.norm()));
            break;
        }
    }
    let (attempt, z0, z1, gz1) = chosen.ok_or(Error::ZeroAtTarget)?;
    let delta = gz1 / (T::lit(2.0) * kernel_norm(weight, z0)?);

    let orbit = orbit_norms(phi, &g, horizon)?;
    let half_c_log = weight.norm_exponent() * phi.log_a();
    let mut rows = Vec::with_capacity(horizon + 1);
    for row in &orbit.rows {
        let n = row.n;
        let nf = T::from_usize_lossy(n);
        // b(1−aⁿ)/(1−a) = b·expm1(n ln a)/expm1(ln a)
        let psi = z0 + phi.b() * ((nf * phi.log_a()).exp_m1() / phi.log_a().exp_m1());
        let psi_value = evaluate(&g, psi)?.norm();
        let scaled_norm = (row.log_norm + nf * half_c_log).exp();
        rows.push(LowerEstimateRow { n, psi_value, scaled_norm });
    }
    let threshold = gz1 / T::lit(2.0);
    let n0 = rows.iter().rposition(|r| !(r.psi_value > threshold)).map_or(0, |i| rows[i].n + 1);
    let verified =
        n0 <= horizon && rows.iter().filter(|r| r.n >= n0).all(|r| r.scaled_norm >= delta * (T::one() - T::lit(1e-12)));
    Ok(LowerEstimate { delta, z0, z1, attempt, n0, rows, verified })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralRadiusEstimate<T> {
    /// `‖C_{φ^[N]}‖^{1/N}`.
    pub estimate: T,
    /// `a^{−(α+2)/2}`.
    pub closed_form: T,
    pub gap: T,
}

pub fn spectral_radius_estimate<T: Real>(
    phi: &AffineSymbol<T>,
    weight: Weight<T>,
    horizon: usize,
) -> Result<SpectralRadiusEstimate<T>> {
    if horizon < 10 {
        return Err(Error::InvalidParameter(format!("horizon {horizon} below 10")));
    }
    let psi = phi.iterate(horizon as u64)?;
    let estimate = (operator_norm(&psi, weight).ln() / T::from_usize_lossy(horizon)).exp();
    let closed_form = operator_norm(phi, weight);
    Ok(SpectralRadiusEstimate { estimate, closed_form, gap: (estimate - closed_form).abs() })
}
