//! JSON schemas for inputs and reports.
//!
//! Input types round-trip through serde; reports are emitted as
//! `serde_json::Value` with sorted keys, so identical inputs produce
//! byte-identical documents. Non-finite numbers serialize as `null`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dynamics::{Cited, DynamicsReport, Spectrum, Truth};
use crate::error::Result;
use crate::experiments::{
    CesaroReport, IrregularRow, LowerEstimate, NormEstimateReport, OrbitReport, ShadowReport, SpectralRadiusEstimate,
    WitnessReport,
};
use crate::kernelspace::{KernelTerm, KernelVector};
use crate::laplace::{IsometryReport, ProfileFunction, ProfileTerm};
use crate::symbols::{AffineSymbol, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymbolJson {
    pub a: f64,
    pub b_re: f64,
    pub b_im: f64,
}

impl SymbolJson {
    pub fn to_symbol(&self) -> Result<AffineSymbol<f64>> {
        AffineSymbol::from_parts(self.a, self.b_re, self.b_im)
    }
}

impl From<&AffineSymbol<f64>> for SymbolJson {
    fn from(s: &AffineSymbol<f64>) -> Self {
        Self { a: s.a(), b_re: s.b().re, b_im: s.b().im }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelTermJson {
    pub w_re: f64,
    pub w_im: f64,
    pub c_re: f64,
    pub c_im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelVectorJson {
    pub alpha: f64,
    pub terms: Vec<KernelTermJson>,
}

impl KernelVectorJson {
    pub fn to_vector(&self) -> Result<KernelVector<f64>> {
        let weight = Weight::new(self.alpha)?;
        let terms = self
            .terms
            .iter()
            .map(|t| KernelTerm { point: Complex::new(t.w_re, t.w_im), coeff: Complex::new(t.c_re, t.c_im) })
            .collect();
        KernelVector::from_terms(weight, terms)
    }
}

impl From<&KernelVector<f64>> for KernelVectorJson {
    fn from(f: &KernelVector<f64>) -> Self {
        Self {
            alpha: f.weight().alpha(),
            terms: f
                .terms()
                .iter()
                .map(|t| KernelTermJson { w_re: t.point.re, w_im: t.point.im, c_re: t.coeff.re, c_im: t.coeff.im })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileTermJson {
    pub gamma_re: f64,
    pub gamma_im: f64,
    pub beta: f64,
    pub c_re: f64,
    pub c_im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileJson {
    pub alpha: f64,
    pub terms: Vec<ProfileTermJson>,
}

impl ProfileJson {
    pub fn to_profile(&self) -> Result<ProfileFunction<f64>> {
        let weight = Weight::new(self.alpha)?;
        let terms = self
            .terms
            .iter()
            .map(|t| ProfileTerm {
                gamma: Complex::new(t.gamma_re, t.gamma_im),
                beta: t.beta,
                decay: Complex::new(t.c_re, t.c_im),
            })
            .collect();
        ProfileFunction::new(weight, terms)
    }
}

impl From<&ProfileFunction<f64>> for ProfileJson {
    fn from(f: &ProfileFunction<f64>) -> Self {
        Self {
            alpha: f.weight().alpha(),
            terms: f
                .terms()
                .iter()
                .map(|t| ProfileTermJson {
                    gamma_re: t.gamma.re,
                    gamma_im: t.gamma.im,
                    beta: t.beta,
                    c_re: t.decay.re,
                    c_im: t.decay.im,
                })
                .collect(),
        }
    }
}

pub fn complex_json(z: Complex<f64>) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn truth_json(t: Truth) -> Value {
    match t {
        Truth::True => Value::Bool(true),
        Truth::False => Value::Bool(false),
        Truth::NotApplicable => Value::String(t.as_str().into()),
    }
}

fn cited<V>(c: &Cited<V>, value: Value) -> Value {
    json!({ "value": value, "citation": c.citation.tag() })
}

pub fn spectrum_json(s: &Spectrum<f64>) -> Value {
    let mut v = json!({ "kind": s.kind(), "hyperbolic": s.is_hyperbolic(), "max_modulus": s.max_modulus() });
    if let Some(r) = s.radius() {
        v["radius"] = json!(r);
    }
    if let Some(g) = s.generator() {
        v["generator"] = complex_json(g);
    }
    v
}

pub fn dynamics_json(phi: &AffineSymbol<f64>, alpha: f64, r: &DynamicsReport<f64>) -> Value {
    json!({
        "symbol": SymbolJson::from(phi),
        "alpha": alpha,
        "c": r.c,
        "cesaro_constant": r.cesaro_constant,
        "operator_norm": cited(&r.operator_norm, json!(r.operator_norm.value)),
        "invertible": cited(&r.invertible, json!(r.invertible.value)),
        "unitary": cited(&r.unitary, json!(r.unitary.value)),
        "normal": cited(&r.normal, json!(r.normal.value)),
        "expansive": cited(&r.expansive, truth_json(r.expansive.value)),
        "uniformly_expansive": cited(&r.uniformly_expansive, truth_json(r.uniformly_expansive.value)),
        "positive_expansive": cited(&r.positive_expansive, json!(r.positive_expansive.value)),
        "uniformly_positive_expansive": cited(&r.uniformly_positive_expansive, json!(r.uniformly_positive_expansive.value)),
        "li_yorke": cited(&r.li_yorke, json!(r.li_yorke.value)),
        "positive_shadowing": cited(&r.positive_shadowing, json!(r.positive_shadowing.value)),
        "cesaro_bounded": cited(&r.cesaro_bounded, json!(r.cesaro_bounded.value)),
        "hyperbolic": cited(&r.hyperbolic, json!(r.hyperbolic.value)),
        "spectrum": cited(&r.spectrum, spectrum_json(&r.spectrum.value)),
    })
}

pub fn orbit_json(r: &OrbitReport<f64>) -> Value {
    json!({
        "max_disagreement": r.max_disagreement,
        "rows": r.rows.iter().map(|row| json!({
            "n": row.n,
            "norm": row.norm,
            "log_norm": row.log_norm,
            "log_norm_successive": row.log_norm_successive,
        })).collect::<Vec<_>>(),
    })
}

pub fn norm_estimates_json(r: &NormEstimateReport<f64>) -> Value {
    json!({
        "c": r.c,
        "equality_case": r.equality,
        "samples": r.samples,
        "skipped": r.skipped,
        "max_equality_violation": r.max_equality_violation,
        "max_inequality_violation": r.max_inequality_violation,
        "max_ratio": r.max_ratio,
    })
}

pub fn lower_estimate_json(r: &LowerEstimate<f64>) -> Value {
    json!({
        "delta": r.delta,
        "z0": complex_json(r.z0),
        "z1": complex_json(r.z1),
        "attempt": r.attempt,
        "n0": r.n0,
        "verified": r.verified,
        "rows": r.rows.iter().map(|row| json!({
            "n": row.n,
            "psi_value": row.psi_value,
            "scaled_norm": row.scaled_norm,
        })).collect::<Vec<_>>(),
    })
}

pub fn shadow_json(r: &ShadowReport<f64>) -> Value {
    json!({
        "epsilon_bound": r.epsilon_bound,
        "epsilon_observed": r.epsilon_observed,
        "within_bound": r.within_bound(),
        "horizon": r.horizon,
        "truncation_index": r.truncation_index,
        "truncation_bound": r.truncation_bound,
        "shadow_point": KernelVectorJson::from(&r.shadow_point),
        "residuals": r.residuals,
    })
}

pub fn witness_json(r: &WitnessReport<f64>) -> Value {
    json!({
        "fixed_point": complex_json(r.fixed_point),
        "kernel_norm": r.kernel_norm,
        "predicted_slope": r.predicted_slope,
        "fitted_slope": r.fitted_slope,
        "max_linear_deviation": r.max_linear_deviation,
        "max_gap": r.max_gap,
        "n_star": r.n_star,
        "values": r.values.iter().map(|(n, v)| json!({ "n": n, "re": v.re, "im": v.im })).collect::<Vec<_>>(),
    })
}

pub fn cesaro_json(r: &CesaroReport<f64>) -> Value {
    json!({
        "f_norm": r.f_norm,
        "bound": r.bound.map_or(json!("unbounded"), |m| json!(m)),
        "max_excess": r.max_excess,
        "witness_index": r.witness_index,
        "certified_lower": r.certified_lower,
        "averages": r.averages,
    })
}

pub fn irregular_json(rows: &[IrregularRow<f64>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "min_norm": r.min_norm,
                    "max_norm": r.max_norm,
                    "f_norm": r.f_norm,
                    "n_threshold": r.n_threshold,
                    "min_after_threshold": r.min_after_threshold,
                    "signature_ok": r.signature_ok,
                })
            })
            .collect(),
    )
}

pub fn spectral_radius_json(r: &SpectralRadiusEstimate<f64>) -> Value {
    json!({ "estimate": r.estimate, "closed_form": r.closed_form, "gap": r.gap })
}

pub fn isometry_json(r: &IsometryReport<f64>) -> Value {
    json!({
        "bergman_norm": r.bergman_norm,
        "mu_norm": r.mu_norm,
        "relative_gap": r.relative_gap,
        "radius": r.radius,
        "tail_bound": r.tail_bound,
        "levels": r.levels.iter().map(|l| json!({
            "level": l.level,
            "order": l.order,
            "bergman_norm": l.bergman_norm,
            "mu_norm": l.mu_norm,
            "gap": l.gap,
        })).collect::<Vec<_>>(),
    })
}

/// Pretty-printed document with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("Value serialization is infallible");
    s.push('\n');
    s
}
