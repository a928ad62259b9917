use super::orbit::{lower_estimate_delta, orbit_norms};
use crate::dynamics::{cesaro_constant, operator_norm};
use crate::error::Result;
use crate::kernelspace::{log_norm, KernelVector};
use crate::scalar::Real;
use crate::symbols::AffineSymbol;

#[derive(Debug, Clone, PartialEq)]
pub struct CesaroReport<T> {
    /// `(1/n) Σ_{j=1}^{n} ‖C_φʲ f‖` for `n = 1..=N`; infinite past the
    /// floating-point range.
    pub averages: Vec<T>,
    pub f_norm: T,
    /// `M` for `a ≥ 1`, absent (unbounded) for `a < 1`.
    pub bound: Option<T>,
    /// `max_n A_n − M‖f‖`, when `M` exists.
    pub max_excess: Option<T>,
    /// First `n` with `A_n > threshold · ‖f‖`.
    pub witness_index: Option<usize>,
    /// `δ cⁿ/n` at `witness_index`, from the lower estimate for `f/‖f‖` (`a < 1`).
    pub certified_lower: Option<T>,
}

/// Absolute Cesàro averages of the orbit of `f`.
pub fn cesaro_averages<T: Real>(
    phi: &AffineSymbol<T>,
    f: &KernelVector<T>,
    horizon: usize,
    threshold: Option<T>,
) -> Result<CesaroReport<T>> {
    let orbit = orbit_norms(phi, f, horizon)?;
    let f_norm = orbit.rows[0].norm;
    let mut averages = Vec::with_capacity(horizon);
    let mut sum = T::zero();
    for row in &orbit.rows[1..] {
        sum += row.norm;
        averages.push(sum / T::from_usize_lossy(row.n));
    }
    let bound = cesaro_constant(phi, f.weight());
    let max_excess = bound.map(|m| averages.iter().map(|&v| v - m * f_norm).fold(T::neg_infinity(), T::max));
    let witness_index = threshold.and_then(|t| averages.iter().position(|&v| v > t * f_norm).map(|i| i + 1));
    let certified_lower = match witness_index {
        Some(n) if phi.multiplier_below_one() => {
            let est = lower_estimate_delta(phi, f, None, n.max(1))?;
            let c = operator_norm(phi, f.weight());
            (n >= est.n0).then(|| est.delta * c.powi(n as i32) / T::from_usize_lossy(n) * f_norm)
        }
        _ => None,
    };
    Ok(CesaroReport { averages, f_norm, bound, max_excess, witness_index, certified_lower })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrregularRow<T> {
    pub min_norm: T,
    pub max_norm: T,
    pub f_norm: T,
    /// For `a < 1`: index past which the lower estimate forces `‖C_φⁿ(f/‖f‖)‖ ≥ 2`.
    pub n_threshold: Option<usize>,
    /// `min_{n ≥ n_threshold} ‖C_φⁿ(f/‖f‖)‖`.
    pub min_after_threshold: Option<T>,
    /// `a ≥ 1`: `max ≤ ‖f‖(1 + 1e−10)`; `a < 1`: `min_after_threshold ≥ 2`.
    pub signature_ok: bool,
}

/// Finite-horizon `liminf`/`limsup` proxies of `‖C_φⁿf‖`.
pub fn irregular_scan<T: Real>(
    phi: &AffineSymbol<T>,
    fs: &[KernelVector<T>],
    horizon: usize,
) -> Result<Vec<IrregularRow<T>>> {
    let mut out = Vec::with_capacity(fs.len());
    for f in fs {
        let orbit = orbit_norms(phi, f, horizon)?;
        let f_norm = orbit.rows[0].norm;
        let min_norm = orbit.rows.iter().map(|r| r.norm).fold(T::infinity(), T::min);
        let max_norm = orbit.rows.iter().map(|r| r.norm).fold(T::zero(), T::max);
        let (n_threshold, min_after_threshold, signature_ok) = if phi.multiplier_below_one() {
            let est = lower_estimate_delta(phi, f, None, horizon)?;
            let log_c = operator_norm(phi, f.weight()).ln();
            // δ cⁿ ≥ 2
            let n_two = ((T::lit(2.0) / est.delta).ln() / log_c).ceil().max(T::zero()).to_usize().unwrap_or(usize::MAX);
            let n_t = est.n0.max(n_two);
            let log_f = log_norm(f);
            let min_after = orbit
                .rows
                .iter()
                .filter(|r| r.n >= n_t)
                .map(|r| (r.log_norm - log_f).exp())
                .fold(T::infinity(), T::min);
            let ok = n_t <= horizon && min_after >= T::lit(2.0);
            (Some(n_t), (n_t <= horizon).then_some(min_after), ok)
        } else {
            (None, None, max_norm <= f_norm * (T::one() + T::lit(1e-10)))
        };
        out.push(IrregularRow { min_norm, max_norm, f_norm, n_threshold, min_after_threshold, signature_ok });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::Weight;
    use num_complex::Complex;

    fn k1() -> KernelVector<f64> {
        KernelVector::kernel(Weight::new(0.0).unwrap(), Complex::new(1.0, 0.0)).unwrap()
    }

    fn sym(a: f64, re: f64, im: f64) -> AffineSymbol<f64> {
        AffineSymbol::from_parts(a, re, im).unwrap()
    }

    #[test]
    fn bounded_regimes() {
        let unit = k1().scaled_real(2.0);
        let r = cesaro_averages(&sym(1.0, 1.0, 0.0), &unit, 200, None).unwrap();
        assert!(r.averages.iter().all(|&v| v <= 1.0 + 1e-10));
        assert_eq!(r.bound, Some(1.0));

        let r = cesaro_averages(&sym(2.0, 0.0, 0.0), &k1(), 100, None).unwrap();
        assert_eq!(r.bound, Some(1.0));
        assert!(r.max_excess.unwrap() <= 1e-12);
    }

    #[test]
    fn unbounded_regime_witness() {
        // ‖C_φʲ k₁‖ = 2ʲ‖k₁‖ for b = 0, so A₅ = 62/5 ‖k₁‖ is the first above 10
        let r = cesaro_averages(&sym(0.5, 0.0, 0.0), &k1(), 30, Some(10.0)).unwrap();
        assert_eq!(r.witness_index, Some(5));
        assert!(r.bound.is_none());
        assert!(r.certified_lower.unwrap() <= r.averages[4]);
    }

    #[test]
    fn irregular_signatures() {
        let fs = [k1()];
        let r = irregular_scan(&sym(1.0, 0.0, 1.0), &fs, 20).unwrap();
        assert!((r[0].max_norm - r[0].min_norm).abs() < 1e-14 && r[0].signature_ok);
        let r = irregular_scan(&sym(2.0, 1.0, 0.0), &fs, 20).unwrap();
        assert!(r[0].signature_ok);
        let r = irregular_scan(&sym(0.5, 1.0, 0.0), &fs, 30).unwrap();
        assert!(r[0].signature_ok, "{:?}", r[0]);
    }
}
