//! The `L²(ℝ₊, μ_α)` model of `A²_α(ℂ₊)`.
//!
//! With `dμ_α = Γ(1+α)/(2^α t^{α+1}) dt`, the Laplace transform
//! `(LF)(w) = ∫₀^∞ F(t) e^{−wt} dt` is an isometry onto `A²_α(ℂ₊)`, and it
//! conjugates `C_φ` to the weighted dilation
//!
//! ```text
//! (Ĉ_φ F)(t)  = a⁻¹ e^{−bt/a} F(t/a)
//! (Ĉ_φ* F)(t) = a^{−(α+1)} e^{−b̄t} F(at)
//! ```
//!
//! Profiles are finite sums `Σ γⱼ t^{βⱼ} e^{−cⱼt}`; the family is closed under
//! both maps and every `μ_α` inner product is a Gamma integral
//! `∫ t^{s−1} e^{−zt} dt = Γ(s)/z^s`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::kernelspace::KernelVector;
use crate::quadrature::{centered_breakpoints, graded_breakpoints, GaussLegendre, HalfLineRule};
use crate::scalar::{gamma, ln_gamma, Real};
use crate::symbols::{AffineSymbol, Weight};

/// One term `γ t^β e^{−ct}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileTerm<T> {
    pub gamma: Complex<T>,
    pub beta: T,
    pub decay: Complex<T>,
}

impl<T: Real> ProfileTerm<T> {
    #[inline]
    pub fn eval(&self, t: T) -> Complex<T> {
        self.gamma * t.powf(self.beta) * (-self.decay * t).exp()
    }
}

/// `F(t) = Σ γⱼ t^{βⱼ} e^{−cⱼt}` in `L²(ℝ₊, μ_α)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileFunction<T> {
    weight: Weight<T>,
    terms: Vec<ProfileTerm<T>>,
}

fn check_term<T: Real>(weight: Weight<T>, term: &ProfileTerm<T>) -> Result<()> {
    if !(term.decay.re > T::zero()) || !term.decay.im.is_finite() {
        return Err(Error::NonDecayingProfile { re: term.decay.re.as_f64() });
    }
    let half_alpha = weight.alpha() / T::lit(2.0);
    if !(term.beta > half_alpha) || !term.beta.is_finite() {
        return Err(Error::ProfileExponent { beta: term.beta.as_f64(), half_alpha: half_alpha.as_f64() });
    }
    Ok(())
}

fn check_weights<T: Real>(left: Weight<T>, right: Weight<T>) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::WeightMismatch { left: left.alpha().as_f64(), right: right.alpha().as_f64() })
    }
}

/// `Γ(s)/z^s` for real `s > 0` and `Re z > 0`, principal branch.
fn gamma_over_power<T: Real>(s: T, z: Complex<T>) -> Complex<T> {
    (Complex::new(ln_gamma(s), T::zero()) - z.ln() * s).exp()
}

impl<T: Real> ProfileFunction<T> {
    pub fn new(weight: Weight<T>, terms: Vec<ProfileTerm<T>>) -> Result<Self> {
        for t in &terms {
            check_term(weight, t)?;
        }
        Ok(Self { weight, terms })
    }

    pub fn zero(weight: Weight<T>) -> Self {
        Self { weight, terms: Vec::new() }
    }

    pub fn single(weight: Weight<T>, gamma: Complex<T>, beta: T, decay: Complex<T>) -> Result<Self> {
        Self::new(weight, vec![ProfileTerm { gamma, beta, decay }])
    }

    /// `t^{α+1} e^{−t}`, the profile of a multiple of `k₁`.
    pub fn standard(weight: Weight<T>) -> Self {
        Self::single(
            weight,
            Complex::new(T::one(), T::zero()),
            weight.alpha() + T::one(),
            Complex::new(T::one(), T::zero()),
        )
        .expect("standard profile is admissible")
    }

    /// The profile whose Laplace transform is exactly `k_w`:
    /// `2^α(α+1)/Γ(α+2) · t^{α+1} e^{−w̄t}`.
    pub fn of_kernel(weight: Weight<T>, w: Complex<T>) -> Result<Self> {
        let g = weight.kernel_constant() / gamma(weight.kernel_exponent());
        Self::single(weight, Complex::new(g, T::zero()), weight.alpha() + T::one(), w.conj())
    }

    #[inline]
    pub fn weight(&self) -> Weight<T> {
        self.weight
    }

    #[inline]
    pub fn terms(&self) -> &[ProfileTerm<T>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.gamma.norm() == T::zero())
    }

    pub fn evaluate(&self, t: T) -> Complex<T> {
        self.terms.iter().map(|term| term.eval(t)).sum()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_weights(self.weight, other.weight)?;
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(Self { weight: self.weight, terms })
    }

    pub fn scaled(&self, s: Complex<T>) -> Self {
        Self {
            weight: self.weight,
            terms: self.terms.iter().map(|t| ProfileTerm { gamma: t.gamma * s, ..*t }).collect(),
        }
    }

    fn min_decay(&self) -> T {
        self.terms.iter().map(|t| t.decay.re).fold(T::infinity(), T::min)
    }
}

/// `Γ(1+α)/2^α`, the density constant of `μ_α`.
pub fn mu_constant<T: Real>(weight: Weight<T>) -> T {
    gamma(weight.alpha() + T::one()) / T::lit(2.0).powf(weight.alpha())
}

/// `⟨F, G⟩_{μ_α}` in closed form.
pub fn mu_inner_product<T: Real>(f: &ProfileFunction<T>, g: &ProfileFunction<T>) -> Result<Complex<T>> {
    check_weights(f.weight, g.weight)?;
    let alpha = f.weight.alpha();
    let mut acc = Complex::new(T::zero(), T::zero());
    for tf in &f.terms {
        for tg in &g.terms {
            let s = tf.beta + tg.beta - alpha;
            if !(s > T::zero()) {
                return Err(Error::DivergentIntegral { s: s.as_f64() });
            }
            acc += tf.gamma * tg.gamma.conj() * gamma_over_power(s, tf.decay + tg.decay.conj());
        }
    }
    Ok(acc * mu_constant(f.weight))
}

pub fn mu_norm<T: Real>(f: &ProfileFunction<T>) -> Result<T> {
    Ok(mu_inner_product(f, f)?.re.max(T::zero()).sqrt())
}

/// `⟨F, G⟩_{μ_α}` by graded half-line quadrature; an independent route to
/// [`mu_inner_product`].
pub fn mu_inner_product_quadrature<T: Real>(
    f: &ProfileFunction<T>,
    g: &ProfileFunction<T>,
    rule: &HalfLineRule<T>,
) -> Result<Complex<T>> {
    check_weights(f.weight, g.weight)?;
    if f.terms.is_empty() || g.terms.is_empty() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    let alpha = f.weight.alpha();
    let exponent = |a: &ProfileTerm<T>, b: &ProfileTerm<T>| a.beta + b.beta - alpha - T::one();
    let mut min_exp = T::infinity();
    let mut max_exp = T::neg_infinity();
    for a in &f.terms {
        for b in &g.terms {
            let e = exponent(a, b);
            if !(e > -T::one()) {
                return Err(Error::DivergentIntegral { s: (e + T::one()).as_f64() });
            }
            min_exp = min_exp.min(e);
            max_exp = max_exp.max(e);
        }
    }
    // Endpoint panel [0, t₀] contributes O(t₀^{e+1}); shrink t₀ until negligible.
    let start = rule.start.min(T::lit(1e-16).powf(T::one() / (min_exp + T::one())));
    let rule = HalfLineRule { start, ..rule.clone() };
    let kappa = f.min_decay() + g.min_decay();
    let mass: T = f.terms.iter().map(|t| t.gamma.norm()).sum::<T>() * g.terms.iter().map(|t| t.gamma.norm()).sum::<T>();
    let s = max_exp.max(T::zero());
    let tail = move |t: T| {
        if t < T::lit(2.0) * s / kappa || t < T::one() {
            T::infinity()
        } else {
            T::lit(2.0) * mass * t.powf(s) * (-kappa * t).exp() / kappa
        }
    };
    let v = rule.integrate(|t| f.evaluate(t) * g.evaluate(t).conj() * t.powf(-(alpha + T::one())), tail)?;
    Ok(v * mu_constant(f.weight))
}

/// `LF`, either as an exact kernel combination or as a closed-form sum.
#[derive(Debug, Clone, PartialEq)]
pub enum LaplaceImage<T> {
    /// Every term has `β = α + 1`: `γ t^{α+1} e^{−w̄₀t} ↦ γΓ(α+2)/(2^α(α+1)) k_{w₀}`.
    Kernel(KernelVector<T>),
    /// `w ↦ Σ γⱼ Γ(βⱼ+1)/(w + cⱼ)^{βⱼ+1}`.
    General(ProfileFunction<T>),
}

impl<T: Real> LaplaceImage<T> {
    pub fn evaluate(&self, w: Complex<T>) -> Result<Complex<T>> {
        match self {
            LaplaceImage::Kernel(k) => crate::kernelspace::evaluate(k, w),
            LaplaceImage::General(f) => Ok(laplace_eval(f, w)),
        }
    }

    pub fn as_kernel_vector(&self) -> Option<&KernelVector<T>> {
        match self {
            LaplaceImage::Kernel(k) => Some(k),
            LaplaceImage::General(_) => None,
        }
    }
}

/// `(LF)(w) = Σ γⱼ Γ(βⱼ+1)/(w + cⱼ)^{βⱼ+1}`.
pub fn laplace_eval<T: Real>(f: &ProfileFunction<T>, w: Complex<T>) -> Complex<T> {
    f.terms.iter().map(|t| t.gamma * gamma_over_power(t.beta + T::one(), w + t.decay)).sum()
}

pub fn laplace_transform<T: Real>(f: &ProfileFunction<T>) -> LaplaceImage<T> {
    let weight = f.weight;
    let target = weight.alpha() + T::one();
    let kernel_family = f.terms.iter().all(|t| (t.beta - target).abs() <= T::lit(1e-12) * T::one().max(target.abs()));
    if !kernel_family {
        return LaplaceImage::General(f.clone());
    }
    let factor = gamma(weight.kernel_exponent()) / weight.kernel_constant();
    let mut k = KernelVector::zero(weight);
    for t in &f.terms {
        k.push(t.gamma * factor, t.decay.conj()).expect("Re(c) > 0 places the kernel point in the half-plane");
    }
    LaplaceImage::Kernel(k)
}

/// `Ĉ_φ`: `(γ, β, c) ↦ (γ a^{−β−1}, β, (c + b)/a)`.
pub fn hat_apply<T: Real>(phi: &AffineSymbol<T>, f: &ProfileFunction<T>) -> ProfileFunction<T> {
    let la = phi.log_a();
    let inv_a = (-la).exp();
    ProfileFunction {
        weight: f.weight,
        terms: f
            .terms
            .iter()
            .map(|t| ProfileTerm {
                gamma: t.gamma * (-(t.beta + T::one()) * la).exp(),
                beta: t.beta,
                decay: (t.decay + phi.b()) * inv_a,
            })
            .collect(),
    }
}

/// `Ĉ_φ*`: `(γ, β, c) ↦ (γ a^{β−(α+1)}, β, a·c + b̄)`.
pub fn hat_adjoint_apply<T: Real>(phi: &AffineSymbol<T>, f: &ProfileFunction<T>) -> ProfileFunction<T> {
    let la = phi.log_a();
    let a = la.exp();
    let alpha = f.weight.alpha();
    ProfileFunction {
        weight: f.weight,
        terms: f
            .terms
            .iter()
            .map(|t| ProfileTerm {
                gamma: t.gamma * ((t.beta - alpha - T::one()) * la).exp(),
                beta: t.beta,
                decay: t.decay * a + phi.b().conj(),
            })
            .collect(),
    }
}

/// `max_z |L(F)(φ(z)) − L(Ĉ_φ F)(z)|` over the samples.
pub fn intertwining_check<T: Real>(phi: &AffineSymbol<T>, f: &ProfileFunction<T>, samples: &[Complex<T>]) -> Result<T> {
    let hat = hat_apply(phi, f);
    let mut worst = T::zero();
    for &z in samples {
        if !(z.re > T::zero()) {
            return Err(Error::Domain { re: z.re.as_f64(), im: z.im.as_f64() });
        }
        let lhs = laplace_eval(f, phi.apply(z));
        let rhs = laplace_eval(&hat, z);
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// Normality diagnostics for `Ĉ_φ` on a profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorReport<T> {
    /// `max_t |(Ĉ Ĉ* − Ĉ* Ĉ)F(t)|`.
    pub max_commutator: T,
    /// `max_t a^{−(α+2)} |e^{−2Re(b)t/a} − e^{−2Re(b)t}| |F(t)|`.
    pub max_predicted: T,
    /// `max_t` of the pointwise distance between the two.
    pub max_formula_deviation: T,
}

pub fn normality_commutator<T: Real>(phi: &AffineSymbol<T>, f: &ProfileFunction<T>, ts: &[T]) -> CommutatorReport<T> {
    let left = hat_apply(phi, &hat_adjoint_apply(phi, f));
    let right = hat_adjoint_apply(phi, &hat_apply(phi, f));
    let scale = (-f.weight.kernel_exponent() * phi.log_a()).exp();
    let two_re_b = T::lit(2.0) * phi.b().re;
    let a = phi.a();
    let mut report =
        CommutatorReport { max_commutator: T::zero(), max_predicted: T::zero(), max_formula_deviation: T::zero() };
    for &t in ts {
        let observed = (left.evaluate(t) - right.evaluate(t)).norm();
        let predicted = scale * ((-two_re_b * t / a).exp() - (-two_re_b * t).exp()).abs() * f.evaluate(t).norm();
        report.max_commutator = report.max_commutator.max(observed);
        report.max_predicted = report.max_predicted.max(predicted);
        report.max_formula_deviation = report.max_formula_deviation.max((observed - predicted).abs());
    }
    report
}

/// Parameters of the two-dimensional Bergman quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct IsometryParams<T> {
    /// Relative agreement required between successive refinement levels.
    pub tol: T,
    /// Gauss–Legendre order at level 0; doubled at each level.
    pub base_order: usize,
    pub max_levels: usize,
    pub ratio: T,
}

impl<T: Real> Default for IsometryParams<T> {
    fn default() -> Self {
        Self { tol: T::lit(1e-6), base_order: 6, max_levels: 4, ratio: T::lit(2.0) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinementRow<T> {
    pub level: usize,
    pub order: usize,
    pub bergman_norm: T,
    pub mu_norm: T,
    pub gap: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsometryReport<T> {
    pub bergman_norm: T,
    pub mu_norm: T,
    pub relative_gap: T,
    /// Truncation radius of the `x, |y|` domain.
    pub radius: T,
    pub tail_bound: T,
    pub levels: Vec<RefinementRow<T>>,
}

/// Bound on `(1/π)∫∫_{|w|>R, x>0} |LF|² x^α dx dy`, valid for
/// `R ≥ max(1, 2 max|cⱼ|)`.
fn bergman_tail<T: Real>(f: &ProfileFunction<T>, r: T) -> T {
    let alpha = f.weight.alpha();
    let two = T::lit(2.0);
    let p_min = f.terms.iter().map(|t| t.beta + T::one()).fold(T::infinity(), T::min);
    let m: T = f.terms.iter().map(|t| t.gamma.norm() * gamma(t.beta + T::one()) * two.powf(t.beta + T::one())).sum();
    // ∫_{−π/2}^{π/2} cos^α θ dθ = B(1/2, (α+1)/2)
    let half = T::lit(0.5);
    let theta = (ln_gamma(half) + ln_gamma((alpha + T::one()) * half) - ln_gamma(alpha * half + T::one())).exp();
    let decay = two * p_min - alpha - two;
    m * m * theta * r.powf(-decay) / (decay * T::PI())
}

/// `‖LF‖²` by the defining area integral over `[0, R] × [−R, R]`.
fn bergman_norm_sq_box<T: Real>(f: &ProfileFunction<T>, radius: T, order: usize, ratio: T, tol: T) -> T {
    let alpha = f.weight.alpha();
    let rule = GaussLegendre::<T>::new(order);
    // [0, x₀] carries O(x₀^{α+1}) of the weight; keep it far below tol.
    let x0 = T::lit(1e-8).min((T::lit(1e-3) * tol).powf(T::one() / (alpha + T::one())));
    let xs = graded_breakpoints(x0, ratio, radius);
    let centers: Vec<T> = f.terms.iter().map(|t| -t.decay.im).collect();
    let scale = f.min_decay() / T::lit(2.0);
    let ys = centered_breakpoints(&centers, scale, ratio, radius);
    let total = rule.integrate_panels(&xs, |x| {
        let inner =
            rule.integrate_panels(&ys, |y| Complex::new(laplace_eval(f, Complex::new(x, y)).norm_sqr(), T::zero()));
        inner * x.powf(alpha)
    });
    total.re / T::PI()
}

/// Compares `‖LF‖` from the area integral with `‖F‖_{μ_α}` in closed form.
pub fn isometry_check<T: Real>(f: &ProfileFunction<T>, params: &IsometryParams<T>) -> Result<IsometryReport<T>> {
    let mu = mu_norm(f)?;
    if f.is_zero() {
        return Ok(IsometryReport {
            bergman_norm: T::zero(),
            mu_norm: T::zero(),
            relative_gap: T::zero(),
            radius: T::zero(),
            tail_bound: T::zero(),
            levels: vec![RefinementRow {
                level: 0,
                order: params.base_order,
                bergman_norm: T::zero(),
                mu_norm: T::zero(),
                gap: T::zero(),
            }],
        });
    }
    let c_max = f.terms.iter().map(|t| t.decay.norm()).fold(T::zero(), T::max);
    let r_min = T::one().max(T::lit(2.0) * c_max);
    // Any partial integral of the positive integrand bounds the total from below.
    let lower = bergman_norm_sq_box(f, T::lit(4.0) * r_min, params.base_order, params.ratio, params.tol);
    let target = T::lit(1e-3) * params.tol * lower;
    let mut radius = r_min;
    while bergman_tail(f, radius) > target {
        radius *= T::lit(2.0);
        if !radius.is_finite() {
            return Err(Error::QuadratureNotConverged { gap: f64::INFINITY, tol: params.tol.as_f64() });
        }
    }
    let tail_bound = bergman_tail(f, radius);

    let mut levels = Vec::new();
    let mut previous: Option<T> = None;
    let mut last_gap = T::infinity();
    for level in 0..params.max_levels {
        let order = params.base_order << level;
        let bergman = bergman_norm_sq_box(f, radius, order, params.ratio, params.tol).max(T::zero()).sqrt();
        let gap = (bergman - mu).abs() / mu.max(T::min_positive_value());
        levels.push(RefinementRow { level, order, bergman_norm: bergman, mu_norm: mu, gap });
        if let Some(prev) = previous {
            last_gap = (bergman - prev).abs() / bergman.max(T::min_positive_value());
            if last_gap <= params.tol {
                return Ok(IsometryReport {
                    bergman_norm: bergman,
                    mu_norm: mu,
                    relative_gap: gap,
                    radius,
                    tail_bound,
                    levels,
                });
            }
        }
        previous = Some(bergman);
    }
    Err(Error::QuadratureNotConverged { gap: last_gap.as_f64(), tol: params.tol.as_f64() })
}
