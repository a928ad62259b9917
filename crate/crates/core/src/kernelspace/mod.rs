//! Exact linear algebra on spans of reproducing kernels of `A²_α(ℂ₊)`.
//!
//! An element is stored as `f = Σ cᵢ k_{wᵢ}` with
//! `k_w(z) = 2^α(α+1)/(z + w̄)^{α+2}`. Inner products reduce to Gram sums
//! `⟨k_w, k_z⟩ = k_w(z)`, and both `C_φ` and `C_φ*` map kernels to
//! multiples of kernels:
//!
//! ```text
//! C_φ  k_w = a^{−(α+2)} k_{(w + b̄)/a}
//! C_φ* k_w = k_{φ(w)}
//! ```

mod gram;

use num_complex::Complex;

pub use gram::{GramMatrix, HermitianFactorization, ILL_CONDITIONED};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::symbols::{AffineSymbol, Weight};

/// Default tolerance of [`prune`].
pub const DEFAULT_PRUNE_TOL: f64 = 1e-13;

/// Points must satisfy `Re(w) > MIN_RE`.
pub const MIN_RE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelTerm<T> {
    pub point: Complex<T>,
    pub coeff: Complex<T>,
}

/// Finite combination `Σ cᵢ k_{wᵢ}^α`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelVector<T> {
    weight: Weight<T>,
    terms: Vec<KernelTerm<T>>,
}

fn check_point<T: Real>(w: Complex<T>) -> Result<()> {
    if w.re > T::lit(MIN_RE) && w.re.is_finite() && w.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { re: w.re.as_f64(), im: w.im.as_f64() })
    }
}

fn check_weights<T: Real>(left: Weight<T>, right: Weight<T>) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::WeightMismatch { left: left.alpha().as_f64(), right: right.alpha().as_f64() })
    }
}

/// Kernel exponent `p = α + 2` evaluated as `base^{−p}`; integer exponents
/// take the multiplication path.
#[inline]
fn inv_power<T: Real>(base: Complex<T>, p: T) -> Complex<T> {
    if p.fract() == T::zero() && p <= T::lit(16.0) {
        base.inv().powi(p.to_i32().unwrap_or(2))
    } else {
        base.powf(-p)
    }
}

/// `k_w(z)` without domain checks.
#[inline]
pub(crate) fn kernel_value<T: Real>(weight: Weight<T>, w: Complex<T>, z: Complex<T>) -> Complex<T> {
    inv_power(z + w.conj(), weight.kernel_exponent()) * weight.kernel_constant()
}

/// `‖k_w‖² = k_w(w) = 2^α(α+1)/(2 Re w)^{α+2}` without domain checks.
#[inline]
pub(crate) fn kernel_norm_sq_unchecked<T: Real>(weight: Weight<T>, w: Complex<T>) -> T {
    weight.kernel_constant() / (T::lit(2.0) * w.re).powf(weight.kernel_exponent())
}

/// `k_w^α(z) = 2^α(α+1)·(z + w̄)^{−(α+2)}` on the principal branch.
pub fn kernel_eval<T: Real>(weight: Weight<T>, w: Complex<T>, z: Complex<T>) -> Result<Complex<T>> {
    check_point(w)?;
    check_point(z)?;
    Ok(kernel_value(weight, w, z))
}

pub fn kernel_norm<T: Real>(weight: Weight<T>, w: Complex<T>) -> Result<T> {
    check_point(w)?;
    Ok(kernel_norm_sq_unchecked(weight, w).sqrt())
}

impl<T: Real> KernelVector<T> {
    pub fn zero(weight: Weight<T>) -> Self {
        Self { weight, terms: Vec::new() }
    }

    /// The reproducing kernel `k_w`.
    pub fn kernel(weight: Weight<T>, w: Complex<T>) -> Result<Self> {
        let mut v = Self::zero(weight);
        v.push(Complex::new(T::one(), T::zero()), w)?;
        Ok(v)
    }

    /// `k_w/‖k_w‖`.
    pub fn unit_kernel(weight: Weight<T>, w: Complex<T>) -> Result<Self> {
        let n = kernel_norm(weight, w)?;
        let mut v = Self::zero(weight);
        v.push(Complex::new(n.recip(), T::zero()), w)?;
        Ok(v)
    }

    pub fn from_parts(weight: Weight<T>, points: &[Complex<T>], coeffs: &[Complex<T>]) -> Result<Self> {
        if points.len() != coeffs.len() {
            return Err(Error::LengthMismatch { points: points.len(), coeffs: coeffs.len() });
        }
        let mut v = Self::zero(weight);
        for (&w, &c) in points.iter().zip(coeffs) {
            v.push(c, w)?;
        }
        Ok(v)
    }

    pub fn from_terms(weight: Weight<T>, terms: Vec<KernelTerm<T>>) -> Result<Self> {
        for t in &terms {
            check_point(t.point)?;
        }
        Ok(Self { weight, terms })
    }

    pub fn push(&mut self, coeff: Complex<T>, point: Complex<T>) -> Result<()> {
        check_point(point)?;
        self.terms.push(KernelTerm { point, coeff });
        Ok(())
    }

    #[inline]
    pub fn weight(&self) -> Weight<T> {
        self.weight
    }

    #[inline]
    pub fn terms(&self) -> &[KernelTerm<T>] {
        &self.terms
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn points(&self) -> Vec<Complex<T>> {
        self.terms.iter().map(|t| t.point).collect()
    }

    pub fn coeffs(&self) -> Vec<Complex<T>> {
        self.terms.iter().map(|t| t.coeff).collect()
    }

    pub fn scaled(&self, s: Complex<T>) -> Self {
        Self {
            weight: self.weight,
            terms: self.terms.iter().map(|t| KernelTerm { point: t.point, coeff: t.coeff * s }).collect(),
        }
    }

    pub fn scaled_real(&self, s: T) -> Self {
        self.scaled(Complex::new(s, T::zero()))
    }

    /// Concatenation `self + other` (no merging).
    /// `Σ cᵢ k_{wᵢ + s}`; requires `Re(s) ≥ 0`.
    pub fn translated(&self, shift: Complex<T>) -> Self {
        debug_assert!(!(shift.re < T::zero()));
        Self {
            weight: self.weight,
            terms: self.terms.iter().map(|t| KernelTerm { point: t.point + shift, coeff: t.coeff }).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_weights(self.weight, other.weight)?;
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(Self { weight: self.weight, terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled_real(-T::one()))
    }

    /// `Σ |cᵢ|² ‖k_{wᵢ}‖²`, the scale against which Gram rounding is judged.
    pub fn diagonal_mass(&self) -> T {
        self.terms.iter().map(|t| t.coeff.norm_sqr() * kernel_norm_sq_unchecked(self.weight, t.point)).sum()
    }
}

/// `⟨f, g⟩ = Σᵢⱼ cᵢ d̄ⱼ k_{wᵢ}(zⱼ)`, conjugate-linear in `g`.
pub fn inner_product<T: Real>(f: &KernelVector<T>, g: &KernelVector<T>) -> Result<Complex<T>> {
    check_weights(f.weight, g.weight)?;
    let weight = f.weight;
    let mut acc = Complex::new(T::zero(), T::zero());
    for tf in &f.terms {
        let mut row = Complex::new(T::zero(), T::zero());
        for tg in &g.terms {
            row += tg.coeff.conj() * kernel_value(weight, tf.point, tg.point);
        }
        acc += tf.coeff * row;
    }
    Ok(acc)
}

/// Raw `Re⟨f, f⟩`, which may dip below zero by rounding.
pub fn norm_sq_raw<T: Real>(f: &KernelVector<T>) -> T {
    let weight = f.weight;
    let terms = &f.terms;
    let mut acc = T::zero();
    for (i, ti) in terms.iter().enumerate() {
        acc += ti.coeff.norm_sqr() * kernel_norm_sq_unchecked(weight, ti.point);
        let mut row = Complex::new(T::zero(), T::zero());
        for tj in &terms[i + 1..] {
            row += tj.coeff.conj() * kernel_value(weight, ti.point, tj.point);
        }
        acc += T::lit(2.0) * (ti.coeff * row).re;
    }
    acc
}

/// `‖f‖`, with the raw squared norm clamped at zero.
pub fn norm<T: Real>(f: &KernelVector<T>) -> T {
    norm_sq_raw(f).max(T::zero()).sqrt()
}

/// `ln ‖f‖`, robust to coefficient and point magnitudes far outside the
/// range where [`norm`] is finite. Uses `‖Σ cᵢ k_{s uᵢ}‖² = s^{−(α+2)} ‖Σ cᵢ k_{uᵢ}‖²`.
/// Returns `−∞` for the zero vector.
pub fn log_norm<T: Real>(f: &KernelVector<T>) -> T {
    let c_max = f.terms.iter().map(|t| t.coeff.norm()).fold(T::zero(), T::max);
    if c_max == T::zero() || f.terms.is_empty() {
        return T::neg_infinity();
    }
    let s = f.terms.iter().map(|t| t.point.norm()).fold(T::zero(), T::max);
    let scaled = KernelVector {
        weight: f.weight,
        terms: f.terms.iter().map(|t| KernelTerm { point: t.point / s, coeff: t.coeff / c_max }).collect(),
    };
    c_max.ln() - f.weight.norm_exponent() * s.ln() + norm(&scaled).ln()
}

/// Norm together with rounding and conditioning diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport<T> {
    pub norm: T,
    pub raw_sq: T,
    /// `raw_sq < −1e−8 · Σ|cᵢ|²‖k_{wᵢ}‖²`.
    pub negative_flag: bool,
    pub condition_estimate: T,
    pub ill_conditioned: bool,
}

pub fn norm_report<T: Real>(f: &KernelVector<T>) -> Result<NormReport<T>> {
    let raw_sq = norm_sq_raw(f);
    let negative_flag = raw_sq < -T::lit(1e-8) * f.diagonal_mass();
    let condition_estimate =
        if f.is_empty() { T::one() } else { gram(&f.points(), f.weight)?.factorize().condition_estimate };
    Ok(NormReport {
        norm: raw_sq.max(T::zero()).sqrt(),
        raw_sq,
        negative_flag,
        condition_estimate,
        ill_conditioned: !(condition_estimate <= T::lit(ILL_CONDITIONED)),
    })
}

/// `f(z) = Σ cᵢ k_{wᵢ}(z)`.
pub fn evaluate<T: Real>(f: &KernelVector<T>, z: Complex<T>) -> Result<Complex<T>> {
    check_point(z)?;
    Ok(f.terms.iter().map(|t| t.coeff * kernel_value(f.weight, t.point, z)).sum())
}

/// `C_φ f = f ∘ φ`, computed termwise as `a^{−(α+2)} k_{(w + b̄)/a}`.
pub fn apply_composition<T: Real>(phi: &AffineSymbol<T>, f: &KernelVector<T>) -> KernelVector<T> {
    let weight = f.weight;
    let scale = (-weight.kernel_exponent() * phi.log_a()).exp();
    let inv_a = (-phi.log_a()).exp();
    let shift = phi.b().conj();
    KernelVector {
        weight,
        terms: f
            .terms
            .iter()
            .map(|t| KernelTerm { point: (t.point + shift) * inv_a, coeff: t.coeff * scale })
            .collect(),
    }
}

/// `C_φ f` split as `e^{s} · g`: returns `s = −(α+2) ln a` and `g`, the
/// vector with moved points and unchanged coefficients.
pub fn apply_composition_scaled<T: Real>(phi: &AffineSymbol<T>, f: &KernelVector<T>) -> (T, KernelVector<T>) {
    let inv_a = (-phi.log_a()).exp();
    let shift = phi.b().conj();
    let moved = KernelVector {
        weight: f.weight,
        terms: f.terms.iter().map(|t| KernelTerm { point: (t.point + shift) * inv_a, coeff: t.coeff }).collect(),
    };
    (-f.weight.kernel_exponent() * phi.log_a(), moved)
}

/// `C_φ* f`, mapping each kernel `k_w` to `k_{φ(w)}`.
pub fn apply_adjoint<T: Real>(phi: &AffineSymbol<T>, f: &KernelVector<T>) -> KernelVector<T> {
    KernelVector {
        weight: f.weight,
        terms: f.terms.iter().map(|t| KernelTerm { point: phi.apply(t.point), coeff: t.coeff }).collect(),
    }
}

/// Gram matrix `G[i][j] = k_{w_j}(w_i) = ⟨k_{w_j}, k_{w_i}⟩`.
pub fn gram<T: Real>(points: &[Complex<T>], weight: Weight<T>) -> Result<GramMatrix<T>> {
    for &w in points {
        check_point(w)?;
    }
    let n = points.len();
    let mut data = vec![Complex::new(T::zero(), T::zero()); n * n];
    for i in 0..n {
        data[i * n + i] = Complex::new(kernel_norm_sq_unchecked(weight, points[i]), T::zero());
        for j in (i + 1)..n {
            let v = kernel_value(weight, points[j], points[i]);
            data[i * n + j] = v;
            data[j * n + i] = v.conj();
        }
    }
    Ok(GramMatrix::from_row_major(n, data))
}

/// Outcome of [`prune_with_bound`].
#[derive(Debug, Clone, PartialEq)]
pub struct Pruned<T> {
    pub vector: KernelVector<T>,
    /// Upper bound on `‖pruned − f‖`.
    pub error_bound: T,
    pub merged: usize,
    pub dropped: usize,
}

/// `‖k_w − k_v‖`, clamped at zero.
fn kernel_distance<T: Real>(weight: Weight<T>, w: Complex<T>, v: Complex<T>) -> T {
    let d = kernel_norm_sq_unchecked(weight, w) + kernel_norm_sq_unchecked(weight, v)
        - T::lit(2.0) * kernel_value(weight, w, v).re;
    d.max(T::zero()).sqrt()
}

fn merge_terms<T: Real>(
    f: &KernelVector<T>,
    close: impl Fn(Complex<T>, Complex<T>) -> bool,
) -> (Vec<KernelTerm<T>>, T, usize) {
    let mut kept: Vec<KernelTerm<T>> = Vec::with_capacity(f.terms.len());
    let mut bound = T::zero();
    let mut merged = 0;
    for t in &f.terms {
        match kept.iter_mut().find(|k| close(k.point, t.point)) {
            Some(k) => {
                if k.point != t.point {
                    bound += t.coeff.norm() * kernel_distance(f.weight, k.point, t.point);
                }
                k.coeff += t.coeff;
                merged += 1;
            }
            None => kept.push(*t),
        }
    }
    (kept, bound, merged)
}

fn drop_small<T: Real>(weight: Weight<T>, terms: Vec<KernelTerm<T>>, tol: T) -> (Vec<KernelTerm<T>>, T, usize) {
    let mut bound = T::zero();
    let mut dropped = 0;
    let kept = terms
        .into_iter()
        .filter(|t| {
            let size = t.coeff.norm() * kernel_norm_sq_unchecked(weight, t.point).sqrt();
            if t.coeff.norm() == T::zero() || size < tol {
                bound += size;
                dropped += 1;
                false
            } else {
                true
            }
        })
        .collect();
    (kept, bound, dropped)
}

/// Merges points within `tol` of each other (absolute distance), then drops
/// terms with `|cᵢ|‖k_{wᵢ}‖ < tol`.
pub fn prune_with_bound<T: Real>(f: &KernelVector<T>, tol: T) -> Pruned<T> {
    let (terms, merge_bound, merged) = merge_terms(f, |w, v| (w - v).norm() <= tol);
    let (terms, drop_bound, dropped) = drop_small(f.weight, terms, tol);
    Pruned { vector: KernelVector { weight: f.weight, terms }, error_bound: merge_bound + drop_bound, merged, dropped }
}

pub fn prune<T: Real>(f: &KernelVector<T>, tol: T) -> KernelVector<T> {
    prune_with_bound(f, tol).vector
}

/// Merges points whose distance is at most `rel_tol · max(1, |w|, |v|)`
/// and drops exact zeros. Used where both sides of a difference were
/// produced by different routes through the same affine maps, so matching
/// points agree only to relative rounding.
pub fn merge_relative<T: Real>(f: &KernelVector<T>, rel_tol: T) -> Pruned<T> {
    let (terms, merge_bound, merged) = merge_terms(f, |w, v| {
        let scale = T::one().max(w.norm()).max(v.norm());
        (w - v).norm() <= rel_tol * scale
    });
    let (terms, drop_bound, dropped) = drop_small(f.weight, terms, T::zero());
    Pruned { vector: KernelVector { weight: f.weight, terms }, error_bound: merge_bound + drop_bound, merged, dropped }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn w(alpha: f64) -> Weight<f64> {
        Weight::new(alpha).unwrap()
    }

    fn k(alpha: f64, p: Complex<f64>) -> KernelVector<f64> {
        KernelVector::kernel(w(alpha), p).unwrap()
    }

    #[test]
    fn kernel_eval_examples() {
        assert!((kernel_eval(w(0.0), c(1.0, 0.0), c(1.0, 0.0)).unwrap() - 0.25).norm() < 1e-15);
        assert!((kernel_eval(w(0.0), c(1.0, 0.0), c(3.0, 0.0)).unwrap() - 0.0625).norm() < 1e-15);
        assert!((kernel_eval(w(1.0), c(1.0, 0.0), c(1.0, 0.0)).unwrap() - 0.5).norm() < 1e-15);
        assert!(matches!(kernel_eval(w(0.0), c(0.0, 1.0), c(1.0, 0.0)), Err(Error::Domain { .. })));
        assert!(kernel_eval(w(0.0), c(1.0, 0.0), c(-1.0, 0.0)).is_err());
    }

    #[test]
    fn non_integer_exponent_matches_powf() {
        let wt = w(0.3);
        let v = kernel_eval(wt, c(1.0, 2.0), c(0.5, -1.0)).unwrap();
        let base = c(0.5, -1.0) + c(1.0, 2.0).conj();
        let expect = base.powf(-2.3) * 2f64.powf(0.3) * 1.3;
        assert!((v - expect).norm() < 1e-14);
    }

    #[test]
    fn inner_product_examples() {
        let k1 = k(0.0, c(1.0, 0.0));
        assert!((inner_product(&k1, &k1).unwrap() - 0.25).norm() < 1e-15);
        let zero = KernelVector::zero(w(0.0));
        assert_eq!(inner_product(&k1, &zero).unwrap(), c(0.0, 0.0));
        let cancel = k1.sub(&k1).unwrap();
        let other = k(0.0, c(2.0, 1.0));
        assert!(inner_product(&cancel, &other).unwrap().norm() < 1e-16);
        assert!(matches!(inner_product(&k1, &k(1.0, c(1.0, 0.0))), Err(Error::WeightMismatch { .. })));
    }

    #[test]
    fn norm_examples() {
        let k1 = k(0.0, c(1.0, 0.0));
        assert!((norm(&k1) - 0.5).abs() < 1e-15);
        assert_eq!(norm(&KernelVector::zero(w(0.0))), 0.0);
        assert!((norm(&k1.scaled_real(2.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn evaluate_examples() {
        let k1 = k(0.0, c(1.0, 0.0));
        assert!((evaluate(&k1, c(3.0, 0.0)).unwrap() - 0.0625).norm() < 1e-15);
        assert_eq!(evaluate(&KernelVector::zero(w(0.0)), c(2.0, 1.0)).unwrap(), c(0.0, 0.0));
        let sum = k1.add(&k(0.0, c(2.0, 0.0))).unwrap();
        assert!((evaluate(&sum, c(1.0, 0.0)).unwrap().re - (0.25 + 1.0 / 9.0)).abs() < 1e-15);
        assert!(evaluate(&k1, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn composition_examples() {
        let k1 = k(0.0, c(1.0, 0.0));
        let id = AffineSymbol::identity();
        assert_eq!(apply_composition(&id, &k1), k1);

        let phi = AffineSymbol::from_parts(2.0, 1.0, 0.0).unwrap();
        let r = apply_composition(&phi, &k1);
        assert!((r.terms()[0].coeff - 0.25).norm() < 1e-15);
        assert!((r.terms()[0].point - c(1.0, 0.0)).norm() < 1e-15);

        let phi = AffineSymbol::from_parts(0.5, 0.0, 1.0).unwrap();
        let r = apply_composition(&phi, &k1);
        assert!((r.terms()[0].coeff - 4.0).norm() < 1e-14);
        assert!((r.terms()[0].point - c(2.0, -2.0)).norm() < 1e-14);
    }

    #[test]
    fn adjoint_examples() {
        let k1 = k(0.0, c(1.0, 0.0));
        assert_eq!(apply_adjoint(&AffineSymbol::identity(), &k1), k1);
        let phi = AffineSymbol::from_parts(2.0, 1.0, 0.0).unwrap();
        let r = apply_adjoint(&phi, &k1);
        assert_eq!(r.terms()[0].coeff, c(1.0, 0.0));
        assert!((r.terms()[0].point - c(3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn gram_examples() {
        let g = gram(&[c(1.0, 0.0)], w(0.0)).unwrap();
        assert!((g.get(0, 0) - 0.25).norm() < 1e-15);

        let g = gram(&[c(1.0, 0.0), c(1.0, 0.0)], w(0.0)).unwrap();
        let det = g.get(0, 0) * g.get(1, 1) - g.get(0, 1) * g.get(1, 0);
        assert!(det.norm() < 1e-16);
        assert_eq!(g.factorize().rank, 1);

        let g = gram(&[c(1.0, 0.0), c(2.0, 0.0)], w(0.0)).unwrap();
        assert!((g.get(0, 0) - 0.25).norm() < 1e-15);
        assert!((g.get(0, 1) - 1.0 / 9.0).norm() < 1e-15);
        assert!((g.get(1, 0) - 1.0 / 9.0).norm() < 1e-15);
        assert!((g.get(1, 1) - 1.0 / 16.0).norm() < 1e-15);
        assert!(gram(&[c(-1.0, 0.0)], w(0.0)).is_err());
    }

    #[test]
    fn prune_examples() {
        let k1 = k(0.0, c(1.0, 0.0));
        let dup = k1.add(&k1).unwrap();
        let p = prune(&dup, DEFAULT_PRUNE_TOL);
        assert_eq!(p.len(), 1);
        assert_eq!(p.terms()[0].coeff, c(2.0, 0.0));

        let mut with_zero = k1.clone();
        with_zero.push(c(0.0, 0.0), c(5.0, 0.0)).unwrap();
        let p = prune(&with_zero, 0.0);
        assert_eq!(p.len(), 1);
        assert_eq!(norm(&p), norm(&k1));

        let mut tiny = k1.clone();
        tiny.push(c(1e-15, 0.0), c(2.0, 0.0)).unwrap();
        let out = prune_with_bound(&tiny, 1e-12);
        assert_eq!(out.vector.len(), 1);
        let err = norm(&prune(&out.vector.sub(&tiny).unwrap(), 0.0));
        assert!(err <= 1e-12);
        assert!(err <= out.error_bound * (1.0 + 1e-9) + 1e-30);
    }

    #[test]
    fn prune_bound_covers_merge_error() {
        let mut f = k(0.5, c(1.0, 0.0));
        f.push(c(0.3, -0.2), c(1.0 + 5e-14, 3e-14)).unwrap();
        f.push(c(-1.0, 0.1), c(2.0, 1.0)).unwrap();
        let out = prune_with_bound(&f, 1e-13);
        assert_eq!(out.vector.len(), 2);
        let err = norm(&prune(&out.vector.sub(&f).unwrap(), 0.0));
        assert!(err <= out.error_bound + 1e-15);
    }

    #[test]
    fn norm_report_flags_clustered_points() {
        let wt = w(0.0);
        let pts = [c(1.0, 0.0), c(1.0 + 1e-7, 0.0), c(1.0, 1e-7)];
        let f = KernelVector::from_parts(wt, &pts, &[c(1.0, 0.0); 3]).unwrap();
        let rep = norm_report(&f).unwrap();
        assert!(rep.ill_conditioned);
        assert!(!rep.negative_flag);
        let g = KernelVector::from_parts(wt, &[c(1.0, 0.0), c(3.0, 2.0)], &[c(1.0, 0.0); 2]).unwrap();
        assert!(!norm_report(&g).unwrap().ill_conditioned);
    }

    #[test]
    fn from_parts_rejects_mismatch() {
        assert!(matches!(KernelVector::from_parts(w(0.0), &[c(1.0, 0.0)], &[]), Err(Error::LengthMismatch { .. })));
        assert!(KernelVector::from_parts(w(0.0), &[c(0.0, 1.0)], &[c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn single_precision_kernel() {
        let wt = Weight::<f32>::new(0.0).unwrap();
        let k1 = KernelVector::kernel(wt, Complex::new(1.0f32, 0.0)).unwrap();
        assert!((norm(&k1) - 0.5).abs() < 1e-6);
    }

    #[test]
    fn log_norm_matches_norm_and_survives_extremes() {
        let wt = w(1.0);
        let f = KernelVector::from_parts(wt, &[c(1.0, 0.5), c(2.0, -1.0)], &[c(1.0, 0.0), c(-0.5, 0.3)]).unwrap();
        assert!((log_norm(&f) - norm(&f).ln()).abs() < 1e-13);
        // s = 1e200: ‖f_s‖ = s^{−3/2}‖f‖ with coefficients scaled by 1e250
        let big = KernelVector::from_parts(
            wt,
            &[c(1e200, 0.5e200), c(2e200, -1e200)],
            &[c(1e250, 0.0), c(-0.5e250, 0.3e250)],
        )
        .unwrap();
        let expect = 250.0 * 10f64.ln() - 1.5 * 200.0 * 10f64.ln() + norm(&f).ln();
        assert!((log_norm(&big) - expect).abs() < 1e-10);
        assert_eq!(log_norm(&KernelVector::zero(wt)), f64::NEG_INFINITY);
    }
}
