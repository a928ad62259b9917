use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bergman(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bergman")).args(args).env("BERGMAN_OUT", out).output().expect("binary runs")
}

fn result(out: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(out.join("result.json")).unwrap()).unwrap()
}

#[test]
fn classify_rows_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = bergman(dir.path(), &["classify", "--a", "0.5", "--b", "1+0i", "--alpha", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let stdout = String::from_utf8(o.stdout).unwrap();
    let row = stdout.lines().find(|l| l.starts_with("positive_expansive ")).unwrap();
    assert!(row.contains("true") && row.contains("a in (0,1)"));
    let r = result(dir.path());
    assert_eq!(r["positive_expansive"]["value"], true);
    assert_eq!(r["expansive"]["value"], "not_applicable");

    let o = bergman(dir.path(), &["classify", "--a", "1", "--b", "0i", "--alpha", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let r = result(dir.path());
    assert_eq!(r["unitary"]["value"], true);
    assert_eq!(r["spectrum"]["value"]["kind"], "singleton_one");

    bergman(dir.path(), &["classify", "--a", "2", "--b", "1+1i", "--alpha", "0"]);
    let r = result(dir.path());
    assert_eq!(r["positive_shadowing"]["value"], true);
    assert!(r["positive_shadowing"]["citation"].as_str().unwrap().contains("a > 1"));

    for (args, needle) in [
        (vec!["classify", "--a", "0"], "multiplier"),
        (vec!["classify", "--a", "1", "--b", "-1+0i"], "Re(b)"),
        (vec!["classify", "--alpha", "-1"], "alpha"),
        (vec!["classify", "--b", "1+2j"], "complex"),
        (vec!["classify", "--bogus"], ""),
    ] {
        let o = bergman(dir.path(), &args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8(o.stderr).unwrap().contains(needle), "{args:?}");
    }
}

#[test]
fn spectrum_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    for (a, b, kind) in [("2", "0i", "circle"), ("1", "0+1i", "unit_circle"), ("1", "1", "spiral_with_zero")] {
        let o = bergman(dir.path(), &["spectrum", "--a", a, "--b", b]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(result(dir.path())["spectrum"]["kind"], kind);
        let svg = std::fs::read_to_string(dir.path().join("spectrum.svg")).unwrap();
        assert!(svg.contains("stroke-dasharray") && svg.contains(r#"width="800""#));
    }
}

#[test]
fn shadow_witness_and_laplace_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = bergman(dir.path(), &["shadow", "--a", "2", "--b", "1", "--alpha", "0", "--delta", "0.01", "--n", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let r = result(dir.path());
    assert!(r["shadow"]["epsilon_observed"].as_f64().unwrap() <= 0.02);
    let csv = std::fs::read_to_string(dir.path().join("residuals.csv")).unwrap();
    assert!(csv.starts_with("n,residual,bound\n"));
    assert_eq!(csv.lines().count(), 101);

    let o = bergman(
        dir.path(),
        &["witness", "--a", "0.7", "--b", "0.3", "--alpha", "0", "--delta", "0.1", "--epsilon", "1"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(result(dir.path())["witness"]["n_star"], 21);

    let o = bergman(dir.path(), &["laplace-check", "--alpha", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let r = result(dir.path());
    assert!(r["isometry"]["relative_gap"].as_f64().unwrap() < 1e-6);
    assert!((r["isometry"]["mu_norm"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!(dir.path().join("refinement.csv").exists());
}

#[test]
fn experiment_commands_write_series() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&[&str], &str); 3] = [
        (&["orbit", "--a", "0.5", "--b", "0+1i", "--n", "20"], "orbit.csv"),
        (&["estimates", "--a", "0.5", "--b", "1", "--samples", "20"], "lower_estimate.csv"),
        (&["cesaro", "--a", "2", "--b", "1+1i", "--point", "2+1i"], "cesaro.csv"),
    ];
    for (args, csv) in cases {
        let o = bergman(dir.path(), args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(dir.path().join(csv).exists(), "{csv}");
    }
    let o = bergman(dir.path(), &["cesaro", "--a", "0.5", "--b", "0i"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(result(dir.path())["cesaro"]["witness_index"].is_u64());
}

#[test]
fn output_is_deterministic() {
    let one = tempfile::tempdir().unwrap();
    let two = tempfile::tempdir().unwrap();
    let args = ["shadow", "--a", "0.5", "--b", "0+1i", "--delta", "0.01", "--n", "15", "--seed", "9"];
    bergman(one.path(), &args);
    bergman(two.path(), &args);
    for file in ["result.json", "residuals.csv"] {
        assert_eq!(
            std::fs::read(one.path().join(file)).unwrap(),
            std::fs::read(two.path().join(file)).unwrap(),
            "{file}"
        );
    }
}

#[test]
fn config_file_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("nested");
    std::fs::write(&cfg, "a = 2\nb = 0+3i\nalpha = -0.5\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_bergman"))
        .args(["classify", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])
        .env_remove("BERGMAN_OUT")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let r = result(&out);
    assert_eq!(r["symbol"]["b_im"], 3.0);
    assert_eq!(r["alpha"], -0.5);
    assert_eq!(r["spectrum"]["value"]["kind"], "circle");
}

#[test]
fn sweep_defaults_to_panel_and_accepts_lists() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(bergman(dir.path(), &["sweep"]).status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 13);

    let o = bergman(dir.path(), &["sweep", "--a-list", "0.5,2", "--b-list", "0i,1+1i", "--alpha-list", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 9);
}

#[test]
fn quick_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = bergman(dir.path(), &["suite", "--quick"]);
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert_eq!(o.status.code(), Some(0), "{stdout}");
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS")).count(), 9);
    let summary: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("suite.json")).unwrap()).unwrap();
    assert_eq!(summary["passed"], true);
}

#[test]
fn failed_check_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    // the drift needs 21 steps to leave the 2ε ball
    let o = bergman(dir.path(), &["witness", "--a", "0.7", "--b", "0.3", "--n", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(result(dir.path())["witness"]["n_star"].is_null());
}
