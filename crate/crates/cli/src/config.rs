use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use bergman_core::{AffineSymbol64, Weight64};
use clap::Args;
use num_complex::Complex64;

pub const DEFAULT_SEED: u64 = 20_240_611;
pub const DEFAULT_OUT: &str = "bergman-out";

/// Invalid input; maps to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<bergman_core::Error> for InputError {
    fn from(e: bergman_core::Error) -> Self {
        InputError(e.to_string())
    }
}

/// Parses `RE+IMi`, `RE-IMi`, `RE`, `IMi`, `i` and `-i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex number".into());
    }
    let bad = || format!("cannot parse {s:?} as a complex number (expected e.g. 1+0i, 0+1i, -2.5-3i)");
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not the leading one and not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |part: &str| -> Result<f64, String> {
        match part {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            p => p.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| bad())?;
            Ok(Complex64::new(re, imag(&body[k..])?))
        }
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Multiplier a > 0 of φ(w) = aw + b
    #[arg(long)]
    pub a: Option<f64>,
    /// Translation b with Re(b) ≥ 0, written RE+IMi
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Bergman weight α > −1
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Horizon N
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Relative tolerance for the Laplace check
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output directory
    #[arg(long, env = "BERGMAN_OUT")]
    pub out: Option<PathBuf>,
    /// Plain-text key=value file with defaults for the flags above
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub a: f64,
    pub b: Complex64,
    pub alpha: f64,
    pub n: Option<usize>,
    pub delta: Option<f64>,
    pub epsilon: Option<f64>,
    pub seed: u64,
    pub tol: Option<f64>,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn symbol(&self) -> Result<AffineSymbol64, InputError> {
        Ok(AffineSymbol64::new(self.a, self.b)?)
    }

    pub fn weight(&self) -> Result<Weight64, InputError> {
        Ok(Weight64::new(self.alpha)?)
    }

    pub fn horizon(&self, default: usize) -> usize {
        self.n.unwrap_or(default)
    }
}

fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("config {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| InputError(format!("config {}:{}: expected key=value", path.display(), lineno + 1)))?;
        let key = k.trim().to_string();
        if !["a", "b", "alpha", "n", "delta", "epsilon", "seed", "tol", "out"].contains(&key.as_str()) {
            return Err(InputError(format!("config {}:{}: unknown key {key:?}", path.display(), lineno + 1)));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

fn parsed<V: std::str::FromStr>(key: &str, raw: &str) -> Result<V, InputError> {
    raw.parse().map_err(|_| InputError(format!("invalid value {raw:?} for {key}")))
}

impl CommonArgs {
    /// Flags (and `BERGMAN_OUT`) override the config file, which overrides defaults.
    pub fn resolve(&self) -> Result<RunConfig, InputError> {
        let file = match &self.config {
            Some(p) => read_config_file(p)?,
            None => BTreeMap::new(),
        };
        fn pick<V: std::str::FromStr + Clone>(
            flag: &Option<V>,
            file: &BTreeMap<String, String>,
            key: &str,
        ) -> Result<Option<V>, InputError> {
            match (flag, file.get(key)) {
                (Some(v), _) => Ok(Some(v.clone())),
                (None, Some(raw)) => parsed(key, raw).map(Some),
                (None, None) => Ok(None),
            }
        }
        let b_raw = self.b.clone().or_else(|| file.get("b").cloned());
        let b = match b_raw {
            Some(s) => parse_complex(&s).map_err(InputError)?,
            None => Complex64::new(0.0, 0.0),
        };
        let cfg = RunConfig {
            a: pick(&self.a, &file, "a")?.unwrap_or(1.0),
            b,
            alpha: pick(&self.alpha, &file, "alpha")?.unwrap_or(0.0),
            n: pick(&self.n, &file, "n")?,
            delta: pick(&self.delta, &file, "delta")?,
            epsilon: pick(&self.epsilon, &file, "epsilon")?,
            seed: pick(&self.seed, &file, "seed")?.unwrap_or(DEFAULT_SEED),
            tol: pick(&self.tol, &file, "tol")?,
            out: pick(&self.out, &file, "out")?.unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
        };
        cfg.symbol()?;
        cfg.weight()?;
        for (name, v) in [("delta", cfg.delta), ("epsilon", cfg.epsilon), ("tol", cfg.tol)] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(InputError(format!("{name} must be positive and finite, got {v}")));
                }
            }
        }
        Ok(cfg)
    }
}
