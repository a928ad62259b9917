//! CSV series and self-contained SVG plots.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::dynamics::Spectrum;
use crate::experiments::OrbitReport;
use crate::laplace::IsometryReport;

/// Samples along each drawn curve.
pub const SVG_SAMPLES: usize = 512;
pub const SVG_SIZE: u32 = 800;

fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        String::new()
    }
}

pub fn write_csv<P, I, R>(path: P, header: &[&str], rows: I) -> io::Result<()>
where
    P: AsRef<Path>,
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
}

/// `n, norm, log_norm`.
pub fn write_orbit_csv(path: impl AsRef<Path>, r: &OrbitReport<f64>) -> io::Result<()> {
    write_csv(
        path,
        &["n", "norm", "log_norm"],
        r.rows.iter().map(|row| vec![row.n.to_string(), fmt_f64(row.norm), fmt_f64(row.log_norm)]),
    )
}

/// `n, value[, bound]`.
pub fn write_series_csv(
    path: impl AsRef<Path>,
    name: &str,
    values: &[f64],
    bound: Option<&[f64]>,
    first_index: usize,
) -> io::Result<()> {
    let header: Vec<&str> = match bound {
        Some(_) => vec!["n", name, "bound"],
        None => vec!["n", name],
    };
    write_csv(
        path,
        &header,
        values.iter().enumerate().map(|(i, &v)| {
            let mut row = vec![(i + first_index).to_string(), fmt_f64(v)];
            if let Some(b) = bound {
                row.push(b.get(i).copied().map_or(String::new(), fmt_f64));
            }
            row
        }),
    )
}

/// `level, bergman_norm, mu_norm, gap`.
pub fn write_refinement_csv(path: impl AsRef<Path>, r: &IsometryReport<f64>) -> io::Result<()> {
    write_csv(
        path,
        &["level", "bergman_norm", "mu_norm", "gap"],
        r.levels.iter().map(|l| vec![l.level.to_string(), fmt_f64(l.bergman_norm), fmt_f64(l.mu_norm), fmt_f64(l.gap)]),
    )
}

/// Plot of `σ` with the unit circle dashed, `SVG_SIZE × SVG_SIZE`.
pub fn spectrum_svg(s: &Spectrum<f64>) -> String {
    let size = SVG_SIZE as f64;
    let half = size / 2.0;
    let extent = 1.15 * s.max_modulus().max(1.0);
    let scale = (half - 20.0) / extent;
    let px = |x: f64| half + x * scale;
    let py = |y: f64| half - y * scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r##"<line x1="0" y1="{half}" x2="{size}" y2="{half}" stroke="#cccccc" stroke-width="1"/>"##);
    let _ = writeln!(out, r##"<line x1="{half}" y1="0" x2="{half}" y2="{size}" stroke="#cccccc" stroke-width="1"/>"##);

    let points = s.boundary_samples(SVG_SAMPLES);
    let path: String = points.iter().map(|z| format!("{:.3},{:.3}", px(z.re), py(z.im))).collect::<Vec<_>>().join(" ");
    match s {
        Spectrum::SingletonOne => {
            let _ = writeln!(out, r##"<circle cx="{:.3}" cy="{:.3}" r="5" fill="#1f4e99"/>"##, px(1.0), py(0.0));
        }
        Spectrum::ClosedDisc { .. } => {
            let _ = writeln!(out, r##"<polygon points="{path}" fill="#9fb8e0" stroke="#1f4e99" stroke-width="2"/>"##);
        }
        Spectrum::UnitCircle | Spectrum::Circle { .. } => {
            let _ = writeln!(out, r##"<polygon points="{path}" fill="none" stroke="#1f4e99" stroke-width="3"/>"##);
        }
        Spectrum::SpiralWithZero { .. } => {
            let curve: String = points[..points.len() - 1]
                .iter()
                .map(|z| format!("{:.3},{:.3}", px(z.re), py(z.im)))
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(out, r##"<polyline points="{curve}" fill="none" stroke="#1f4e99" stroke-width="2"/>"##);
            let _ = writeln!(out, r##"<circle cx="{half}" cy="{half}" r="4" fill="#1f4e99"/>"##);
        }
    }
    let _ = writeln!(
        out,
        r##"<circle cx="{half}" cy="{half}" r="{scale:.3}" fill="none" stroke="#d62728" stroke-width="1.5" stroke-dasharray="8 6"/>"##
    );
    let label = match s.radius() {
        Some(r) => format!("{} r={r}", s.kind()),
        None => s.kind().to_string(),
    };
    let _ = writeln!(out, r#"<text x="16" y="28" font-family="monospace" font-size="16">{label}</text>"#);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    #[test]
    fn svg_is_self_contained_with_dashed_unit_circle() {
        for s in [
            Spectrum::Circle { radius: 0.5 },
            Spectrum::ClosedDisc { radius: 2.0 },
            Spectrum::UnitCircle,
            Spectrum::SingletonOne,
            Spectrum::SpiralWithZero { generator: Complex::new(1.0, 0.0) },
        ] {
            let svg = spectrum_svg(&s);
            assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
            assert!(svg.contains("stroke-dasharray"));
            assert!(svg.contains(r#"width="800" height="800""#));
            assert!(!svg.contains("href"));
            assert_eq!(svg, spectrum_svg(&s));
        }
    }

    #[test]
    fn csv_round_trip() {
        let dir = std::env::temp_dir().join(format!("bergman-export-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("series.csv");
        write_series_csv(&path, "average", &[1.0, 0.5], Some(&[1.0, 1.0]), 1).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "n,average,bound\n1,1,1\n2,0.5,1\n");
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
