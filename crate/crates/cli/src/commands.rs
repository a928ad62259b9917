use std::fs;
use std::path::{Path, PathBuf};

use bergman_core::dynamics::{classify, DynamicsReport, Truth};
use bergman_core::experiments::{
    cesaro_averages, lower_estimate_delta, make_pseudo_orbit, non_shadowing_witness, orbit_norms, shadow_contraction,
    shadow_expansion, spectral_radius_estimate, verify_norm_estimates, PseudoMode, PANEL,
};
use bergman_core::export::{spectrum_svg, write_csv, write_orbit_csv, write_refinement_csv, write_series_csv};
use bergman_core::laplace::{isometry_check, IsometryParams};
use bergman_core::suite::{run_suite, suite_json, SuiteConfig};
use bergman_core::wire::{self, KernelVectorJson, ProfileJson};
use bergman_core::{AffineSymbol64, KernelVector64, ProfileFunction64};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::config::{parse_complex, InputError, RunConfig};

/// Whether every checked bound held; `false` maps to exit code 1.
pub type Passed = bool;
pub type CmdResult = Result<Passed, InputError>;

fn io_err(path: &Path, e: std::io::Error) -> InputError {
    InputError(format!("{}: {e}", path.display()))
}

fn prepare(out: &Path) -> Result<(), InputError> {
    fs::create_dir_all(out).map_err(|e| io_err(out, e))
}

fn write_text(path: PathBuf, text: &str) -> Result<(), InputError> {
    fs::write(&path, text).map_err(|e| io_err(&path, e))
}

fn write_result(out: &Path, v: &Value) -> Result<String, InputError> {
    let text = wire::to_pretty(v);
    write_text(out.join("result.json"), &text)?;
    Ok(text)
}

fn csv_result(path: PathBuf, r: std::io::Result<()>) -> Result<(), InputError> {
    r.map_err(|e| io_err(&path, e))
}

fn load_json(path: &Path) -> Result<Value, InputError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn schema_err(path: &Path, e: serde_json::Error) -> InputError {
    InputError(format!("{}: {e}", path.display()))
}

/// The vector the experiments act on: a JSON file, `k_w` for `--point`, or `k₁`.
pub fn test_vector(cfg: &RunConfig, vector: Option<&Path>, point: Option<&str>) -> Result<KernelVector64, InputError> {
    if let Some(path) = vector {
        let v: KernelVectorJson = serde_json::from_value(load_json(path)?).map_err(|e| schema_err(path, e))?;
        if v.alpha != cfg.alpha {
            return Err(InputError(format!("vector alpha {} differs from --alpha {}", v.alpha, cfg.alpha)));
        }
        return Ok(v.to_vector()?);
    }
    let w = match point {
        Some(p) => parse_complex(p).map_err(InputError)?,
        None => Complex64::new(1.0, 0.0),
    };
    Ok(KernelVector64::kernel(cfg.weight()?, w)?)
}

fn cited_row(name: &str, value: String, citation: &str) -> String {
    format!("{name:<30} {value:<24} {citation}")
}

fn table(r: &DynamicsReport<f64>) -> String {
    let b = |v: bool| v.to_string();
    let t = |v: Truth| v.to_string();
    let spec = &r.spectrum.value;
    let spec_text = match (spec.radius(), spec.generator()) {
        (Some(radius), _) => format!("{} r={radius}", spec.kind()),
        (None, Some(g)) => format!("{} b={g}", spec.kind()),
        _ => spec.kind().to_string(),
    };
    let rows = [
        cited_row("operator_norm", r.operator_norm.value.to_string(), r.operator_norm.citation.tag()),
        cited_row("invertible", b(r.invertible.value), r.invertible.citation.tag()),
        cited_row("unitary", b(r.unitary.value), r.unitary.citation.tag()),
        cited_row("normal", b(r.normal.value), r.normal.citation.tag()),
        cited_row("expansive", t(r.expansive.value), r.expansive.citation.tag()),
        cited_row("uniformly_expansive", t(r.uniformly_expansive.value), r.uniformly_expansive.citation.tag()),
        cited_row("positive_expansive", b(r.positive_expansive.value), r.positive_expansive.citation.tag()),
        cited_row(
            "uniformly_positive_expansive",
            b(r.uniformly_positive_expansive.value),
            r.uniformly_positive_expansive.citation.tag(),
        ),
        cited_row("li_yorke", b(r.li_yorke.value), r.li_yorke.citation.tag()),
        cited_row("positive_shadowing", b(r.positive_shadowing.value), r.positive_shadowing.citation.tag()),
        cited_row("cesaro_bounded", b(r.cesaro_bounded.value), r.cesaro_bounded.citation.tag()),
        cited_row("hyperbolic", b(r.hyperbolic.value), r.hyperbolic.citation.tag()),
        cited_row("spectrum", spec_text, r.spectrum.citation.tag()),
    ];
    let mut out = cited_row("property", "value".into(), "citation");
    out.push('\n');
    out.push_str(&"-".repeat(100));
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub fn classify_cmd(cfg: &RunConfig) -> CmdResult {
    let phi = cfg.symbol()?;
    let r = classify(&phi, cfg.weight()?);
    prepare(&cfg.out)?;
    write_result(&cfg.out, &wire::dynamics_json(&phi, cfg.alpha, &r))?;
    print!("{}", table(&r));
    Ok(true)
}

pub fn spectrum_cmd(cfg: &RunConfig) -> CmdResult {
    let phi = cfg.symbol()?;
    let r = classify(&phi, cfg.weight()?);
    let spec = &r.spectrum.value;
    prepare(&cfg.out)?;
    let doc = json!({
        "symbol": wire::SymbolJson::from(&phi),
        "alpha": cfg.alpha,
        "spectrum": wire::spectrum_json(spec),
        "citation": r.spectrum.citation.tag(),
    });
    print!("{}", write_result(&cfg.out, &doc)?);
    write_text(cfg.out.join("spectrum.svg"), &spectrum_svg(spec))?;
    Ok(true)
}

pub fn orbit_cmd(cfg: &RunConfig, f: &KernelVector64) -> CmdResult {
    let phi = cfg.symbol()?;
    let r = orbit_norms(&phi, f, cfg.horizon(50))?;
    let radius = spectral_radius_estimate(&phi, cfg.weight()?, cfg.horizon(50).max(10))?;
    prepare(&cfg.out)?;
    let doc = json!({
        "symbol": wire::SymbolJson::from(&phi),
        "alpha": cfg.alpha,
        "vector": KernelVectorJson::from(f),
        "orbit": wire::orbit_json(&r),
        "spectral_radius": wire::spectral_radius_json(&radius),
    });
    print!("{}", write_result(&cfg.out, &doc)?);
    let path = cfg.out.join("orbit.csv");
    csv_result(path.clone(), write_orbit_csv(&path, &r))?;
    Ok(r.max_disagreement <= 1e-8)
}

pub fn estimates_cmd(cfg: &RunConfig, f: &KernelVector64, samples: usize) -> CmdResult {
    let phi = cfg.symbol()?;
    let w = cfg.weight()?;
    let norms = verify_norm_estimates(&phi, w, samples, cfg.seed);
    let mut passed =
        norms.max_inequality_violation <= 1e-10 && (!norms.equality || norms.max_equality_violation <= 1e-10);
    prepare(&cfg.out)?;
    let mut doc = json!({
        "symbol": wire::SymbolJson::from(&phi),
        "alpha": cfg.alpha,
        "seed": cfg.seed,
        "norm_estimates": wire::norm_estimates_json(&norms),
        "lower_estimate": Value::Null,
    });
    if phi.multiplier_below_one() {
        let est = lower_estimate_delta(&phi, f, None, cfg.horizon(60))?;
        passed &= est.verified;
        doc["lower_estimate"] = wire::lower_estimate_json(&est);
        let path = cfg.out.join("lower_estimate.csv");
        let values: Vec<f64> = est.rows.iter().map(|r| r.scaled_norm).collect();
        let bound = vec![est.delta; values.len()];
        csv_result(path.clone(), write_series_csv(&path, "scaled_norm", &values, Some(&bound), 0))?;
    }
    print!("{}", write_result(&cfg.out, &doc)?);
    Ok(passed)
}

/// No constructive witness in this regime; report the classifier's answer.
fn deferred(phi: &AffineSymbol64, cfg: &RunConfig) -> Result<Value, InputError> {
    let r = classify(phi, cfg.weight()?);
    Ok(json!({
        "symbol": wire::SymbolJson::from(phi),
        "alpha": cfg.alpha,
        "positive_shadowing": { "value": r.positive_shadowing.value, "citation": r.positive_shadowing.citation.tag() },
        "numeric_witness": Value::Null,
    }))
}

pub fn shadow_cmd(cfg: &RunConfig, f: &KernelVector64, iterate_sum: bool) -> CmdResult {
    let phi = cfg.symbol()?;
    let delta = cfg.delta.unwrap_or(0.01);
    let horizon = cfg.horizon(if phi.multiplier_above_one() { 100 } else { 20 });
    prepare(&cfg.out)?;
    let contraction = phi.multiplier_above_one();
    let expansion = phi.multiplier_below_one() && phi.has_imaginary_translation();
    if !(contraction || expansion) {
        print!("{}", write_result(&cfg.out, &deferred(&phi, cfg)?)?);
        return Ok(true);
    }
    let mode =
        if iterate_sum { PseudoMode::IterateSum } else { PseudoMode::Perturbed { seed: cfg.seed, amplitude: 1.0 } };
    let po = make_pseudo_orbit(&phi, f, delta, horizon, mode)?;
    let r = if contraction { shadow_contraction(&po)? } else { shadow_expansion(&po)? };
    let doc = json!({
        "symbol": wire::SymbolJson::from(&phi),
        "alpha": cfg.alpha,
        "delta": delta,
        "seed": cfg.seed,
        "mode": if iterate_sum { "iterate_sum" } else { "perturbed" },
        "pseudo_orbit_max_gap": po.max_gap(),
        "shadow": wire::shadow_json(&r),
    });
    print!("{}", write_result(&cfg.out, &doc)?);
    let path = cfg.out.join("residuals.csv");
    let bound = vec![r.epsilon_bound; r.residuals.len()];
    csv_result(path.clone(), write_series_csv(&path, "residual", &r.residuals, Some(&bound), 1))?;
    Ok(r.within_bound())
}

pub fn witness_cmd(cfg: &RunConfig) -> CmdResult {
    let phi = cfg.symbol()?;
    prepare(&cfg.out)?;
    if phi.fixed_point().interior().is_none() {
        print!("{}", write_result(&cfg.out, &deferred(&phi, cfg)?)?);
        return Ok(true);
    }
    let delta = cfg.delta.unwrap_or(0.1);
    let epsilon = cfg.epsilon.unwrap_or(1.0);
    let r = non_shadowing_witness(&phi, cfg.weight()?, delta, epsilon, cfg.horizon(100))?;
    let doc = json!({
        "symbol": wire::SymbolJson::from(&phi),
        "alpha": cfg.alpha,
        "delta": delta,
        "epsilon": epsilon,
        "witness": wire::witness_json(&r),
    });
    print!("{}", write_result(&cfg.out, &doc)?);
    let path = cfg.out.join("witness.csv");
    let values: Vec<f64> = r.values.iter().map(|(_, v)| v.re).collect();
    let line: Vec<f64> = r.values.iter().map(|(n, _)| (*n as f64 - 1.0) * r.predicted_slope).collect();
    csv_result(path.clone(), write_series_csv(&path, "value_at_fixed_point", &values, Some(&line), 1))?;
    Ok(r.n_star.is_some())
}

pub fn cesaro_cmd(cfg: &RunConfig, f: &KernelVector64, threshold: f64) -> CmdResult {
    let phi = cfg.symbol()?;
    let r = cesaro_averages(&phi, f, cfg.horizon(100), Some(threshold))?;
    prepare(&cfg.out)?;
    let doc = json!({
        "symbol": wire::SymbolJson::from(&phi),
        "alpha": cfg.alpha,
        "threshold": threshold,
        "vector": KernelVectorJson::from(f),
        "cesaro": wire::cesaro_json(&r),
    });
    print!("{}", write_result(&cfg.out, &doc)?);
    let path = cfg.out.join("cesaro.csv");
    let bound = r.bound.map(|m| vec![m * r.f_norm; r.averages.len()]);
    csv_result(path.clone(), write_series_csv(&path, "average", &r.averages, bound.as_deref(), 1))?;
    Ok(r.max_excess.is_none_or(|e| e <= 1e-9))
}

pub fn laplace_cmd(cfg: &RunConfig, profile: Option<&Path>) -> CmdResult {
    let f = match profile {
        Some(path) => {
            let p: ProfileJson = serde_json::from_value(load_json(path)?).map_err(|e| schema_err(path, e))?;
            if p.alpha != cfg.alpha {
                return Err(InputError(format!("profile alpha {} differs from --alpha {}", p.alpha, cfg.alpha)));
            }
            p.to_profile()?
        }
        None => ProfileFunction64::standard(cfg.weight()?),
    };
    let params = IsometryParams { tol: cfg.tol.unwrap_or(1e-6), ..IsometryParams::default() };
    let r = isometry_check(&f, &params)?;
    prepare(&cfg.out)?;
    let doc = json!({
        "alpha": cfg.alpha,
        "profile": ProfileJson::from(&f),
        "tol": params.tol,
        "isometry": wire::isometry_json(&r),
    });
    print!("{}", write_result(&cfg.out, &doc)?);
    let path = cfg.out.join("refinement.csv");
    csv_result(path.clone(), write_refinement_csv(&path, &r))?;
    Ok(r.relative_gap < params.tol)
}

pub fn suite_cmd(cfg: &RunConfig, quick: bool) -> CmdResult {
    let suite = SuiteConfig { quick, seed: cfg.seed, ..SuiteConfig::default() };
    let results = run_suite(&suite);
    for r in &results {
        println!("{}", r.line());
    }
    prepare(&cfg.out)?;
    write_text(cfg.out.join("suite.json"), &wire::to_pretty(&suite_json(&results)))?;
    Ok(results.iter().all(|r| r.passed))
}

fn parse_list<V>(raw: &str, parse: impl Fn(&str) -> Result<V, String>) -> Result<Vec<V>, InputError> {
    raw.split(',').map(|s| parse(s.trim()).map_err(InputError)).collect()
}

/// One CSV row per `(a, b, α)`; the full grid of the given lists, or the
/// built-in panel when none is given.
pub fn sweep_cmd(cfg: &RunConfig, a_list: Option<&str>, b_list: Option<&str>, alpha_list: Option<&str>) -> CmdResult {
    let float = |s: &str| s.parse::<f64>().map_err(|_| format!("invalid number {s:?}"));
    let grid: Vec<(f64, Complex64, f64)> = if a_list.is_none() && b_list.is_none() && alpha_list.is_none() {
        PANEL.iter().map(|p| (p.a, Complex64::new(p.b_re, p.b_im), p.alpha)).collect()
    } else {
        let a_s = a_list.map_or(Ok(vec![cfg.a]), |s| parse_list(s, float))?;
        let b_s = b_list.map_or(Ok(vec![cfg.b]), |s| parse_list(s, parse_complex))?;
        let al_s = alpha_list.map_or(Ok(vec![cfg.alpha]), |s| parse_list(s, float))?;
        let mut g = Vec::new();
        for &a in &a_s {
            for &b in &b_s {
                for &al in &al_s {
                    g.push((a, b, al));
                }
            }
        }
        g
    };
    let mut rows = Vec::with_capacity(grid.len());
    let mut docs = Vec::with_capacity(grid.len());
    for (a, b, alpha) in grid {
        let phi = AffineSymbol64::new(a, b)?;
        let w = bergman_core::Weight64::new(alpha)?;
        let r = classify(&phi, w);
        let spec = &r.spectrum.value;
        rows.push(vec![
            a.to_string(),
            b.re.to_string(),
            b.im.to_string(),
            alpha.to_string(),
            r.operator_norm.value.to_string(),
            r.invertible.value.to_string(),
            r.unitary.value.to_string(),
            r.normal.value.to_string(),
            r.expansive.value.to_string(),
            r.positive_expansive.value.to_string(),
            r.li_yorke.value.to_string(),
            r.positive_shadowing.value.to_string(),
            r.cesaro_bounded.value.to_string(),
            r.hyperbolic.value.to_string(),
            spec.kind().to_string(),
            spec.radius().map_or(String::new(), |x| x.to_string()),
        ]);
        docs.push(wire::dynamics_json(&phi, alpha, &r));
    }
    prepare(&cfg.out)?;
    let path = cfg.out.join("sweep.csv");
    let header = [
        "a",
        "b_re",
        "b_im",
        "alpha",
        "operator_norm",
        "invertible",
        "unitary",
        "normal",
        "expansive",
        "positive_expansive",
        "li_yorke",
        "positive_shadowing",
        "cesaro_bounded",
        "hyperbolic",
        "spectrum",
        "radius",
    ];
    csv_result(path.clone(), write_csv(&path, &header, rows))?;
    write_result(&cfg.out, &Value::Array(docs))?;
    println!("wrote {}", path.display());
    Ok(true)
}
