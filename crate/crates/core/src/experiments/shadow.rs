use num_complex::Complex;

use super::pseudo::{route_distance, PseudoOrbit};
use crate::dynamics::operator_norm;
use crate::error::{Error, Result};
use crate::kernelspace::{
    apply_composition, evaluate, kernel_norm, merge_relative, prune, KernelVector, DEFAULT_PRUNE_TOL,
};
use crate::scalar::Real;
use crate::symbols::AffineSymbol;

use super::ROUTE_MERGE_TOL;

#[derive(Debug, Clone, PartialEq)]
pub struct ShadowReport<T> {
    pub shadow_point: KernelVector<T>,
    /// A-priori bound, including `truncation_bound`.
    pub epsilon_bound: T,
    /// `max_n ‖C_φⁿ x − xₙ₊₁‖` over the horizon.
    pub epsilon_observed: T,
    pub residuals: Vec<T>,
    pub horizon: usize,
    /// Last series index kept, for series shadows.
    pub truncation_index: Option<usize>,
    pub truncation_bound: T,
}

impl<T: Real> ShadowReport<T> {
    pub fn within_bound(&self) -> bool {
        self.epsilon_observed <= self.epsilon_bound * (T::one() + T::lit(1e-6))
    }
}

fn residuals<T: Real>(po: &PseudoOrbit<T>, x: &KernelVector<T>) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(po.horizon());
    for n in 0..po.horizon() {
        let psi = po.symbol.iterate(n as u64)?;
        out.push(route_distance(&apply_composition(&psi, x), &po.vectors[n])?);
    }
    Ok(out)
}

fn finish<T: Real>(
    po: &PseudoOrbit<T>,
    x: KernelVector<T>,
    epsilon_bound: T,
    truncation_index: Option<usize>,
    truncation_bound: T,
) -> Result<ShadowReport<T>> {
    let residuals = residuals(po, &x)?;
    let epsilon_observed = residuals.iter().copied().fold(T::zero(), T::max);
    Ok(ShadowReport {
        shadow_point: x,
        epsilon_bound,
        epsilon_observed,
        residuals,
        horizon: po.horizon(),
        truncation_index,
        truncation_bound,
    })
}

/// Shadow of a pseudo-orbit of a contraction (`a > 1`): the orbit of `x₁`,
/// within `δ/(1−c)`.
pub fn shadow_contraction<T: Real>(po: &PseudoOrbit<T>) -> Result<ShadowReport<T>> {
    if !po.symbol.multiplier_above_one() {
        return Err(Error::RegimeMismatch { operation: "shadow_contraction" });
    }
    let c = operator_norm(&po.symbol, po.vectors[0].weight());
    finish(po, po.vectors[0].clone(), po.delta / (T::one() - c), None, T::zero())
}

/// Shadow for `a ∈ (0,1)`, `Re(b) = 0`:
/// `x = x₁ + Σ_{k=0}^{J} C_φ^{−(k+1)} d_k` with `d_k = x_{k+2} − C_φ x_{k+1}`,
/// within `δc′/(1−c′)` plus the truncation tail, `c′ = a^{(α+2)/2}`.
pub fn shadow_expansion<T: Real>(po: &PseudoOrbit<T>) -> Result<ShadowReport<T>> {
    let phi = &po.symbol;
    if !(phi.multiplier_below_one() && phi.has_imaginary_translation()) {
        return Err(Error::RegimeMismatch { operation: "shadow_expansion" });
    }
    let weight = po.vectors[0].weight();
    let inverse = phi.inverse()?;
    let cp = operator_norm(phi, weight).recip();
    let delta = po.delta;
    let one = T::one();
    let base = delta * cp / (one - cp);
    // smallest J with δc′^{J+1}/(1−c′) < 0.01·δc′/(1−c′), i.e. c′^J < 0.01
    let j_formula = (T::lit(0.01).ln() / cp.ln()).floor().to_usize().unwrap_or(0) + 1;
    let horizon = po.horizon();
    let j = j_formula.max(horizon.saturating_sub(1));
    let truncation_bound = delta * cp.powi(j as i32 + 1) / (one - cp);

    let mut x = po.vectors[0].clone();
    for k in 0..horizon.saturating_sub(1).min(j + 1) {
        let diff = po.vectors[k + 1].sub(&apply_composition(phi, &po.vectors[k]))?;
        let d = prune(&merge_relative(&diff, T::lit(ROUTE_MERGE_TOL)).vector, T::lit(DEFAULT_PRUNE_TOL));
        if d.is_empty() {
            continue;
        }
        let back = apply_composition(&inverse.iterate(k as u64 + 1)?, &d);
        x = prune(&x.add(&back)?, T::lit(DEFAULT_PRUNE_TOL));
    }
    finish(po, x, base + truncation_bound, Some(j), truncation_bound)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport<T> {
    pub fixed_point: Complex<T>,
    /// `‖k_p‖`.
    pub kernel_norm: T,
    /// `δ‖k_p‖`.
    pub predicted_slope: T,
    /// `(xₙ(p) − x₁(p))/(n − 1)` at the last index.
    pub fitted_slope: T,
    /// `max_n |xₙ(p) − (n−1)δ‖k_p‖|`.
    pub max_linear_deviation: T,
    /// `(n, xₙ(p))` for `n = 1..=N`.
    pub values: Vec<(usize, Complex<T>)>,
    pub max_gap: T,
    /// First `n` with `|xₙ₊₁(p) − x₁(p)| > 2ε‖k_p‖`; no orbit then stays
    /// within `ε` of `x₁, …, xₙ₊₁`, because `(C_φⁿx)(p) = x(p)`.
    pub n_star: Option<usize>,
}

/// Drift witness at an interior fixed point `p`: the pseudo-orbit
/// `x₁ = 0`, `xₙ₊₁ = C_φxₙ + δk_p/‖k_p‖` satisfies `xₙ(p) = (n−1)δ‖k_p‖`.
pub fn non_shadowing_witness<T: Real>(
    phi: &AffineSymbol<T>,
    weight: crate::symbols::Weight<T>,
    delta: T,
    epsilon: T,
    horizon: usize,
) -> Result<WitnessReport<T>> {
    let p = phi.fixed_point().interior().ok_or(Error::NoInteriorFixedPoint)?;
    if !(delta > T::zero() && epsilon > T::zero()) {
        return Err(Error::InvalidParameter("delta and epsilon must be positive".into()));
    }
    if !(2..=super::MAX_HORIZON).contains(&horizon) {
        return Err(Error::InvalidParameter(format!("horizon {horizon} outside 2..={}", super::MAX_HORIZON)));
    }
    let kp = kernel_norm(weight, p)?;
    let step = KernelVector::unit_kernel(weight, p)?.scaled_real(delta);
    let predicted_slope = delta * kp;
    let budget = T::lit(2.0) * epsilon * kp * (T::one() + T::lit(1e-9));

    let mut x = KernelVector::zero(weight);
    let mut values = Vec::with_capacity(horizon);
    let mut max_gap = T::zero();
    let mut max_dev = T::zero();
    let mut n_star = None;
    for n in 1..=horizon {
        let v = evaluate(&x, p)?;
        let expect = T::from_usize_lossy(n - 1) * predicted_slope;
        max_dev = max_dev.max((v - expect).norm());
        if n_star.is_none() && n > 1 && v.norm() > budget {
            n_star = Some(n - 1);
        }
        values.push((n, v));
        if n < horizon {
            let tx = apply_composition(phi, &x);
            let next = tx.add(&step)?;
            max_gap = max_gap.max(route_distance(&tx, &next)?);
            x = next;
        }
    }
    let last = values.last().expect("horizon ≥ 2").1.re;
    Ok(WitnessReport {
        fixed_point: p,
        kernel_norm: kp,
        predicted_slope,
        fitted_slope: last / T::from_usize_lossy(horizon - 1),
        max_linear_deviation: max_dev,
        values,
        max_gap,
        n_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{make_pseudo_orbit, PseudoMode};
    use crate::symbols::Weight;

    fn w0() -> Weight<f64> {
        Weight::new(0.0).unwrap()
    }

    fn k1() -> KernelVector<f64> {
        KernelVector::kernel(w0(), Complex::new(1.0, 0.0)).unwrap()
    }

    fn perturbed(a: f64, re: f64, im: f64, delta: f64, n: usize) -> PseudoOrbit<f64> {
        let phi = AffineSymbol::from_parts(a, re, im).unwrap();
        make_pseudo_orbit(&phi, &k1(), delta, n, PseudoMode::Perturbed { seed: 5, amplitude: 1.0 }).unwrap()
    }

    #[test]
    fn contraction_examples() {
        let r = shadow_contraction(&perturbed(2.0, 1.0, 0.0, 0.01, 40)).unwrap();
        assert!((r.epsilon_bound - 0.02).abs() < 1e-15);
        assert!(r.within_bound() && r.epsilon_observed > 0.0);

        let r = shadow_contraction(&perturbed(4.0, 0.0, 0.0, 0.1, 20)).unwrap();
        assert!((r.epsilon_bound - 0.1 / 0.75).abs() < 1e-15);
        assert!(r.within_bound());

        let phi = AffineSymbol::from_parts(2.0, 1.0, 0.0).unwrap();
        let exact =
            make_pseudo_orbit(&phi, &k1(), 0.01, 10, PseudoMode::Perturbed { seed: 1, amplitude: 0.0 }).unwrap();
        assert!(shadow_contraction(&exact).unwrap().epsilon_observed < 1e-15);

        assert!(shadow_contraction(&perturbed(0.5, 0.0, 1.0, 0.01, 5)).is_err());
    }

    #[test]
    fn expansion_examples() {
        let r = shadow_expansion(&perturbed(0.5, 0.0, 1.0, 0.01, 20)).unwrap();
        assert!((r.epsilon_bound - r.truncation_bound - 0.01).abs() < 1e-15);
        assert!(r.within_bound(), "{} > {}", r.epsilon_observed, r.epsilon_bound);

        let r = shadow_expansion(&perturbed(0.25, 0.0, 0.0, 0.01, 15)).unwrap();
        assert!((r.epsilon_bound - r.truncation_bound - 0.01 / 3.0).abs() < 1e-15);
        assert!(r.within_bound());

        let phi = AffineSymbol::from_parts(0.5, 0.0, 1.0).unwrap();
        let exact =
            make_pseudo_orbit(&phi, &k1(), 0.01, 10, PseudoMode::Perturbed { seed: 1, amplitude: 0.0 }).unwrap();
        let r = shadow_expansion(&exact).unwrap();
        assert_eq!(r.shadow_point, k1());
        // ‖x₁₀‖ = 2⁹‖k₁‖; the two routes agree to rounding
        assert!(r.epsilon_observed < 1e-12 * 256.0);

        assert!(shadow_expansion(&perturbed(0.5, 1.0, 0.0, 0.01, 5)).is_err());
    }

    #[test]
    fn iterate_sum_orbit_shadowed_by_series() {
        let phi = AffineSymbol::from_parts(0.5, 0.0, 1.0).unwrap();
        let po = make_pseudo_orbit(&phi, &k1(), 0.01, 12, PseudoMode::IterateSum).unwrap();
        assert!(shadow_expansion(&po).unwrap().within_bound());
    }

    #[test]
    fn witness_examples() {
        let phi = AffineSymbol::from_parts(0.7, 0.3, 0.0).unwrap();
        let r = non_shadowing_witness(&phi, w0(), 0.1, 1.0, 30).unwrap();
        assert!((r.fixed_point - 1.0).norm() < 1e-15);
        assert!((r.predicted_slope - 0.05).abs() < 1e-15);
        assert!((r.fitted_slope - 0.05).abs() < 1e-12);
        assert_eq!(r.n_star, Some(21));
        assert!((r.max_gap - 0.1).abs() < 1e-12);

        let phi = AffineSymbol::from_parts(1.0, 1.0, 0.0).unwrap();
        assert!(matches!(non_shadowing_witness(&phi, w0(), 0.1, 1.0, 30), Err(Error::NoInteriorFixedPoint)));
    }
}
