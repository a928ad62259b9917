//! Composite Gauss–Legendre quadrature on geometrically graded panels.
//!
//! Panels `[t₀rᵏ, t₀r^{k+1}]` resolve both algebraic endpoint behaviour at
//! `t = 0` and slowly decaying tails with a logarithmic number of panels.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Gauss–Legendre rule on `[−1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Nodes are Newton-refined roots of `P_n` computed in `f64`.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let n = order;
        let mut nodes = vec![0.0f64; n];
        let mut weights = vec![0.0f64; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d.is_finite() { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes: nodes.into_iter().map(T::lit).collect(), weights: weights.into_iter().map(T::lit).collect() }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// `∫_lo^hi f`.
    pub fn integrate<F>(&self, lo: T, hi: T, mut f: F) -> Complex<T>
    where
        F: FnMut(T) -> Complex<T>,
    {
        let half = (hi - lo) / T::lit(2.0);
        let mid = (hi + lo) / T::lit(2.0);
        let mut acc = Complex::new(T::zero(), T::zero());
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += f(mid + half * x) * w;
        }
        acc * half
    }

    /// Sum of [`integrate`](Self::integrate) over consecutive breakpoints.
    pub fn integrate_panels<F>(&self, breaks: &[T], mut f: F) -> Complex<T>
    where
        F: FnMut(T) -> Complex<T>,
    {
        breaks
            .windows(2)
            .map(|p| self.integrate(p[0], p[1], &mut f))
            .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let (pn, pn1) = if n == 1 { (x, 1.0) } else { (p1, p0) };
    let d = n as f64 * (x * pn - pn1) / (x * x - 1.0);
    (pn, d)
}

/// Breakpoints `0, t₀, t₀r, t₀r², …` up to and including `end`.
pub fn graded_breakpoints<T: Real>(start: T, ratio: T, end: T) -> Vec<T> {
    let mut out = vec![T::zero()];
    if end <= T::zero() {
        return out;
    }
    let mut t = start.min(end);
    out.push(t);
    while t < end {
        t = (t * ratio).min(end);
        out.push(t);
    }
    out
}

/// Breakpoints on `[−half_width, half_width]`, graded geometrically away
/// from every center with first panel width `scale`.
pub fn centered_breakpoints<T: Real>(centers: &[T], scale: T, ratio: T, half_width: T) -> Vec<T> {
    let mut out = vec![-half_width, half_width];
    for &c in centers {
        if c.abs() < half_width {
            out.push(c);
        }
        let mut d = scale;
        while d < T::lit(2.0) * half_width {
            for p in [c - d, c + d] {
                if p.abs() < half_width {
                    out.push(p);
                }
            }
            d *= ratio;
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    out.dedup_by(|a, b| (*a - *b).abs() <= T::epsilon() * T::one().max(a.abs()));
    out
}

/// Half-line rule: first panel `[0, start]`, then graded panels until an
/// analytic tail bound falls below `tail_tol` relative to the running sum.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfLineRule<T> {
    pub start: T,
    pub ratio: T,
    pub order: usize,
    pub tail_tol: T,
    pub max_panels: usize,
}

impl<T: Real> Default for HalfLineRule<T> {
    fn default() -> Self {
        Self { start: T::lit(1e-8), ratio: T::lit(2.0), order: 16, tail_tol: T::lit(1e-16), max_panels: 400 }
    }
}

impl<T: Real> HalfLineRule<T> {
    /// `∫_0^∞ f`, where `tail(T)` bounds `∫_T^∞ |f|`.
    pub fn integrate<F, B>(&self, mut f: F, tail: B) -> Result<Complex<T>>
    where
        F: FnMut(T) -> Complex<T>,
        B: Fn(T) -> T,
    {
        let rule = GaussLegendre::new(self.order);
        let mut acc = rule.integrate(T::zero(), self.start, &mut f);
        let mut lo = self.start;
        for _ in 0..self.max_panels {
            let hi = lo * self.ratio;
            acc += rule.integrate(lo, hi, &mut f);
            lo = hi;
            let bound = tail(lo);
            if bound == T::zero() || bound <= self.tail_tol * acc.norm() {
                return Ok(acc);
            }
        }
        Err(Error::QuadratureNotConverged { gap: tail(lo).as_f64(), tol: self.tail_tol.as_f64() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_nodes() {
        let r = GaussLegendre::<f64>::new(3);
        let x = (0.6f64).sqrt();
        assert!((r.nodes()[0] + x).abs() < 1e-15);
        assert!(r.nodes()[1].abs() < 1e-15);
        assert!((r.weights()[1] - 8.0 / 9.0).abs() < 1e-15);
        assert!((r.weights()[0] - 5.0 / 9.0).abs() < 1e-15);
        let r = GaussLegendre::<f64>::new(1);
        assert!(r.nodes()[0].abs() < 1e-15 && (r.weights()[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn exact_for_polynomials() {
        for n in [2usize, 5, 8, 16, 32] {
            let r = GaussLegendre::<f64>::new(n);
            let deg = 2 * n - 1;
            let v = r.integrate(0.0, 2.0, |x| Complex::new(x.powi(deg as i32), 0.0));
            let exact = 2f64.powi(deg as i32 + 1) / (deg as f64 + 1.0);
            assert!(((v.re - exact) / exact).abs() < 1e-13, "n={n}");
            assert!((r.weights().iter().sum::<f64>() - 2.0).abs() < 1e-13);
        }
    }

    #[test]
    fn half_line_singular_weight() {
        // ∫_0^∞ t^{-1/2} e^{-t} dt = √π
        let rule = HalfLineRule { start: 1e-20, ..HalfLineRule::default() };
        let v = rule.integrate(|t: f64| Complex::new(t.powf(-0.5) * (-t).exp(), 0.0), |t| 2.0 * (-t).exp()).unwrap();
        assert!((v.re - std::f64::consts::PI.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn half_line_gamma_integral() {
        // ∫_0^∞ t e^{-2t} dt = 1/4
        let rule = HalfLineRule::<f64>::default();
        let v = rule.integrate(|t| Complex::new(t * (-2.0 * t).exp(), 0.0), |t| (t + 1.0) * (-2.0 * t).exp()).unwrap();
        assert!((v.re - 0.25).abs() < 1e-14);
    }

    #[test]
    fn breakpoints() {
        let b = graded_breakpoints(1.0f64, 2.0, 5.0);
        assert_eq!(b, vec![0.0, 1.0, 2.0, 4.0, 5.0]);
        let c = centered_breakpoints(&[0.0f64], 0.5, 2.0, 3.0);
        assert_eq!(c, vec![-3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0]);
    }
}
