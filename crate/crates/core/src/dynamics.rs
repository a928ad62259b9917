//! Closed-form classification of `C_φ` on `A²_α(ℂ₊)` for affine `φ`.

use std::fmt;

use num_complex::Complex;

use crate::scalar::Real;
use crate::symbols::{AffineSymbol, Weight};

/// `σ(C_φ)` as a symbolic set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Spectrum<T> {
    /// `{1}`, the identity operator.
    SingletonOne,
    UnitCircle,
    /// `{e^{−bt} : t ≥ 0} ∪ {0}` with `Re(b) > 0`.
    SpiralWithZero {
        generator: Complex<T>,
    },
    Circle {
        radius: T,
    },
    ClosedDisc {
        radius: T,
    },
}

impl<T: Real> Spectrum<T> {
    pub fn kind(&self) -> &'static str {
        match self {
            Spectrum::SingletonOne => "singleton_one",
            Spectrum::UnitCircle => "unit_circle",
            Spectrum::SpiralWithZero { .. } => "spiral_with_zero",
            Spectrum::Circle { .. } => "circle",
            Spectrum::ClosedDisc { .. } => "closed_disc",
        }
    }

    pub fn radius(&self) -> Option<T> {
        match *self {
            Spectrum::Circle { radius } | Spectrum::ClosedDisc { radius } => Some(radius),
            _ => None,
        }
    }

    pub fn generator(&self) -> Option<Complex<T>> {
        match *self {
            Spectrum::SpiralWithZero { generator } => Some(generator),
            _ => None,
        }
    }

    /// `max{|λ| : λ ∈ σ}`.
    pub fn max_modulus(&self) -> T {
        match *self {
            Spectrum::SingletonOne | Spectrum::UnitCircle | Spectrum::SpiralWithZero { .. } => T::one(),
            Spectrum::Circle { radius } | Spectrum::ClosedDisc { radius } => radius,
        }
    }

    /// Membership up to an absolute tolerance.
    pub fn contains(&self, z: Complex<T>, tol: T) -> bool {
        let m = z.norm();
        match *self {
            Spectrum::SingletonOne => (z - T::one()).norm() <= tol,
            Spectrum::UnitCircle => (m - T::one()).abs() <= tol,
            Spectrum::Circle { radius } => (m - radius).abs() <= tol,
            Spectrum::ClosedDisc { radius } => m <= radius + tol,
            Spectrum::SpiralWithZero { generator } => {
                if m <= tol {
                    return true;
                }
                if m > T::one() + tol {
                    return false;
                }
                let t = (-m.ln() / generator.re).max(T::zero());
                (spiral_point(generator, t) - z).norm() <= tol
            }
        }
    }

    /// `σ ∩ 𝕋 = ∅`.
    pub fn is_hyperbolic(&self) -> bool {
        match *self {
            Spectrum::SingletonOne | Spectrum::UnitCircle | Spectrum::SpiralWithZero { .. } => false,
            Spectrum::Circle { radius } => (radius - T::one()).abs() > T::unit_tol(),
            Spectrum::ClosedDisc { radius } => radius < T::one() - T::unit_tol(),
        }
    }

    /// Points tracing the boundary of the set; the spiral is followed until
    /// `|e^{−bt}| < 1e−3` and closed with the origin.
    pub fn boundary_samples(&self, count: usize) -> Vec<Complex<T>> {
        let count = count.max(2);
        let ring = |r: T| -> Vec<Complex<T>> {
            (0..count)
                .map(|k| {
                    let th = T::TAU() * T::from_usize_lossy(k) / T::from_usize_lossy(count);
                    Complex::from_polar(r, th)
                })
                .collect()
        };
        match *self {
            Spectrum::SingletonOne => vec![Complex::new(T::one(), T::zero())],
            Spectrum::UnitCircle => ring(T::one()),
            Spectrum::Circle { radius } | Spectrum::ClosedDisc { radius } => ring(radius),
            Spectrum::SpiralWithZero { generator } => {
                let horizon = T::lit(1e3).ln() / generator.re;
                let mut pts: Vec<Complex<T>> = (0..count - 1)
                    .map(|k| spiral_point(generator, horizon * T::from_usize_lossy(k) / T::from_usize_lossy(count - 2)))
                    .collect();
                pts.push(Complex::new(T::zero(), T::zero()));
                pts
            }
        }
    }
}

fn spiral_point<T: Real>(b: Complex<T>, t: T) -> Complex<T> {
    (-b * t).exp()
}

/// `‖C_φ‖ = a^{−(α+2)/2}`.
pub fn operator_norm<T: Real>(phi: &AffineSymbol<T>, weight: Weight<T>) -> T {
    (-weight.norm_exponent() * phi.log_a()).exp()
}

pub fn spectrum<T: Real>(phi: &AffineSymbol<T>, weight: Weight<T>) -> Spectrum<T> {
    if phi.multiplier_is_one() {
        if phi.is_identity() {
            Spectrum::SingletonOne
        } else if phi.has_imaginary_translation() {
            Spectrum::UnitCircle
        } else {
            Spectrum::SpiralWithZero { generator: phi.b() }
        }
    } else {
        let radius = operator_norm(phi, weight);
        if phi.has_imaginary_translation() {
            Spectrum::Circle { radius }
        } else {
            Spectrum::ClosedDisc { radius }
        }
    }
}

pub fn is_hyperbolic<T: Real>(s: &Spectrum<T>) -> bool {
    s.is_hyperbolic()
}

/// Three-valued answer for properties defined only on part of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    NotApplicable,
}

impl Truth {
    pub fn from_bool(v: bool) -> Self {
        if v {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::NotApplicable => "not_applicable",
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The result each classification field rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Citation {
    NormFormula,
    InvertibilityCriterion,
    NormalityCriterion,
    UnitaryCriterion,
    ExpansiveCriterion,
    PositiveExpansiveCriterion,
    NoLiYorkeChaos,
    ShadowingCriterion,
    CesaroCriterion,
    ParabolicSpectrum,
    HyperbolicSpectrum,
    IdentityTrivial,
    HyperbolicDefinition,
}

impl Citation {
    pub fn tag(self) -> &'static str {
        match self {
            Citation::NormFormula => "norm formula ||C_phi|| = a^(-(alpha+2)/2)",
            Citation::InvertibilityCriterion => "invertible iff Re(b) = 0",
            Citation::NormalityCriterion => "normal iff a = 1 or Re(b) = 0",
            Citation::UnitaryCriterion => "unitary iff a = 1 and Re(b) = 0",
            Citation::ExpansiveCriterion => "uniformly expansive iff invertible and a != 1",
            Citation::PositiveExpansiveCriterion => "uniformly positive expansive iff a in (0,1)",
            Citation::NoLiYorkeChaos => "no irregular vectors, never Li-Yorke chaotic",
            Citation::ShadowingCriterion => "positive shadowing iff (a in (0,1) and Re(b) = 0) or a > 1",
            Citation::CesaroCriterion => "absolutely Cesaro bounded iff a >= 1",
            Citation::ParabolicSpectrum => "spectrum for a = 1, b != 0",
            Citation::HyperbolicSpectrum => "spectrum for a != 1",
            Citation::IdentityTrivial => "trivial extension: identity operator",
            Citation::HyperbolicDefinition => "hyperbolic iff spectrum misses the unit circle",
        }
    }
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A value with the result it comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cited<V> {
    pub value: V,
    pub citation: Citation,
}

fn cite<V>(value: V, citation: Citation) -> Cited<V> {
    Cited { value, citation }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsReport<T> {
    pub operator_norm: Cited<T>,
    /// `c = a^{−(α+2)/2}`.
    pub c: T,
    /// Cesàro constant `max{1, c/(1−c)}` for `a > 1`, `1` for `a = 1`, absent otherwise.
    pub cesaro_constant: Option<T>,
    pub invertible: Cited<bool>,
    pub unitary: Cited<bool>,
    pub normal: Cited<bool>,
    pub expansive: Cited<Truth>,
    pub uniformly_expansive: Cited<Truth>,
    pub positive_expansive: Cited<bool>,
    pub uniformly_positive_expansive: Cited<bool>,
    pub li_yorke: Cited<bool>,
    pub positive_shadowing: Cited<bool>,
    pub cesaro_bounded: Cited<bool>,
    pub hyperbolic: Cited<bool>,
    pub spectrum: Cited<Spectrum<T>>,
}

/// Cesàro constant for `a ≥ 1`.
pub fn cesaro_constant<T: Real>(phi: &AffineSymbol<T>, weight: Weight<T>) -> Option<T> {
    if phi.multiplier_is_one() {
        Some(T::one())
    } else if phi.multiplier_above_one() {
        let c = operator_norm(phi, weight);
        Some(T::one().max(c / (T::one() - c)))
    } else {
        None
    }
}

pub fn classify<T: Real>(phi: &AffineSymbol<T>, weight: Weight<T>) -> DynamicsReport<T> {
    let one = phi.multiplier_is_one();
    let below = phi.multiplier_below_one();
    let above = phi.multiplier_above_one();
    let imaginary = phi.has_imaginary_translation();

    let spec = spectrum(phi, weight);
    let spec_citation = match spec {
        Spectrum::SingletonOne => Citation::IdentityTrivial,
        Spectrum::UnitCircle | Spectrum::SpiralWithZero { .. } => Citation::ParabolicSpectrum,
        _ => Citation::HyperbolicSpectrum,
    };
    let expansive = if imaginary { Truth::from_bool(!one) } else { Truth::NotApplicable };
    let norm = operator_norm(phi, weight);

    DynamicsReport {
        operator_norm: cite(norm, Citation::NormFormula),
        c: norm,
        cesaro_constant: cesaro_constant(phi, weight),
        invertible: cite(imaginary, Citation::InvertibilityCriterion),
        unitary: cite(one && imaginary, Citation::UnitaryCriterion),
        normal: cite(one || imaginary, Citation::NormalityCriterion),
        expansive: cite(expansive, Citation::ExpansiveCriterion),
        uniformly_expansive: cite(expansive, Citation::ExpansiveCriterion),
        positive_expansive: cite(below, Citation::PositiveExpansiveCriterion),
        uniformly_positive_expansive: cite(below, Citation::PositiveExpansiveCriterion),
        li_yorke: cite(false, Citation::NoLiYorkeChaos),
        positive_shadowing: cite((below && imaginary) || above, Citation::ShadowingCriterion),
        cesaro_bounded: cite(!below, Citation::CesaroCriterion),
        hyperbolic: cite(spec.is_hyperbolic(), Citation::HyperbolicDefinition),
        spectrum: cite(spec, spec_citation),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(a: f64, re: f64, im: f64) -> AffineSymbol<f64> {
        AffineSymbol::from_parts(a, re, im).unwrap()
    }

    fn w(alpha: f64) -> Weight<f64> {
        Weight::new(alpha).unwrap()
    }

    #[test]
    fn operator_norm_examples() {
        assert!((operator_norm(&sym(4.0, 0.0, 0.0), w(0.0)) - 0.25).abs() < 1e-15);
        assert_eq!(operator_norm(&sym(1.0, 0.0, 0.0), w(5.0)), 1.0);
        assert!((operator_norm(&sym(0.25, 0.0, 0.0), w(2.0)) - 16.0).abs() < 1e-13);
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(spectrum(&sym(1.0, 0.0, 1.0), w(0.0)), Spectrum::UnitCircle);
        match spectrum(&sym(2.0, 0.0, 0.0), w(0.0)) {
            Spectrum::Circle { radius } => assert!((radius - 0.5).abs() < 1e-15),
            s => panic!("{s:?}"),
        }
        match spectrum(&sym(0.5, 1.0, 0.0), w(0.0)) {
            Spectrum::ClosedDisc { radius } => assert!((radius - 2.0).abs() < 1e-15),
            s => panic!("{s:?}"),
        }
        assert_eq!(spectrum(&sym(1.0, 0.0, 0.0), w(0.0)), Spectrum::SingletonOne);
        assert!(matches!(spectrum(&sym(1.0, 1.0, 0.0), w(0.0)), Spectrum::SpiralWithZero { .. }));
    }

    #[test]
    fn hyperbolicity_examples() {
        assert!(Spectrum::Circle { radius: 0.5 }.is_hyperbolic());
        assert!(!Spectrum::ClosedDisc { radius: 2.0 }.is_hyperbolic());
        assert!(!Spectrum::<f64>::UnitCircle.is_hyperbolic());
        assert!(!Spectrum::<f64>::SingletonOne.is_hyperbolic());
        assert!(Spectrum::ClosedDisc { radius: 0.5 }.is_hyperbolic());
        assert!(!Spectrum::SpiralWithZero { generator: Complex::new(1.0, 2.0) }.is_hyperbolic());
    }

    #[test]
    fn membership() {
        let disc = Spectrum::ClosedDisc { radius: 2.0 };
        assert!(disc.contains(Complex::new(0.0, 0.0), 1e-12));
        let circle = Spectrum::Circle { radius: 0.5 };
        assert!(!circle.contains(Complex::new(0.0, 0.0), 1e-12));
        assert!(circle.contains(Complex::new(0.0, 0.5), 1e-12));
        let b = Complex::new(1.0, 2.0);
        let spiral = Spectrum::SpiralWithZero { generator: b };
        assert!(spiral.contains(Complex::new(1.0, 0.0), 1e-12));
        assert!(spiral.contains((-b * 0.7).exp(), 1e-12));
        assert!(!spiral.contains((-b * 0.7).exp() * Complex::new(0.0, 1.0), 1e-6));
        for z in spiral.boundary_samples(512) {
            assert!(spiral.contains(z, 1e-9));
        }
    }

    #[test]
    fn classify_examples() {
        let r = classify(&sym(0.5, 1.0, 0.0), w(0.0));
        assert!(r.positive_expansive.value);
        assert!(!r.positive_shadowing.value && !r.cesaro_bounded.value && !r.normal.value);
        assert_eq!(r.spectrum.value, Spectrum::ClosedDisc { radius: 2.0 });
        assert_eq!(r.expansive.value, Truth::NotApplicable);

        let r = classify(&sym(2.0, 1.0, 1.0), w(0.0));
        assert!(!r.positive_expansive.value && r.positive_shadowing.value && r.cesaro_bounded.value);
        assert_eq!(r.spectrum.value, Spectrum::ClosedDisc { radius: 0.5 });
        assert!(r.hyperbolic.value);
        assert_eq!(r.cesaro_constant, Some(1.0));

        let r = classify(&sym(1.0, 0.0, 1.0), w(3.0));
        assert!(r.unitary.value && !r.positive_shadowing.value && !r.li_yorke.value);
        assert_eq!(r.expansive.value, Truth::False);

        let r = classify(&sym(1.0, 0.0, 0.0), w(0.0));
        assert_eq!(r.spectrum.citation, Citation::IdentityTrivial);
        assert!(r.unitary.value && r.cesaro_bounded.value && !r.positive_shadowing.value);
    }

    #[test]
    fn classify_f32() {
        let phi = AffineSymbol::<f32>::from_parts(2.0, 0.0, 0.0).unwrap();
        let r = classify(&phi, Weight::new(0.0f32).unwrap());
        assert_eq!(r.expansive.value, Truth::True);
        assert!((r.operator_norm.value - 0.5).abs() < 1e-6);
    }
}
