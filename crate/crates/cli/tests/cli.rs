//! End-to-end checks of the `revlab` binary: output formats, determinism,
//! exit codes, and the method cross-checks on the figure parameter sets.

use std::f64::consts::TAU;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn revlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revlab"))
        .arg("--quiet")
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = revlab(args);
    assert!(
        out.status.success(),
        "revlab {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn read_json(path: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

/// Parsed `(x, re, im)` rows after checking the header.
fn read_csv(path: &Path) -> Vec<[f64; 3]> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,re,im"));
    lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|f| f.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect()
}

fn evolve(dir: &Path, name: &str, extra: &[&str]) -> (Vec<[f64; 3]>, Value) {
    let prefix = dir.join(name);
    let mut args = vec!["evolve", "--out", prefix.to_str().unwrap()];
    args.extend_from_slice(extra);
    ok(&args);
    (
        read_csv(&prefix.with_extension("csv")),
        read_json(&prefix.with_extension("json")),
    )
}

#[test]
fn csv_format_and_grid() {
    let dir = tempfile::tempdir().unwrap();
    let extra = [
        "--monomial",
        "3",
        "--theta",
        "1/4",
        "--time",
        "1/3",
        "--modes",
        "64",
    ];
    let (rows, manifest) = evolve(dir.path(), "a", &extra);
    assert_eq!(rows.len(), 256);
    assert_eq!(manifest["parameters"]["grid"], 256);
    for (k, r) in rows.iter().enumerate() {
        assert!((r[0] - TAU * k as f64 / 256.0).abs() < 1e-15);
        assert!(r[0] >= 0.0 && r[0] < TAU);
    }
    assert!(rows.windows(2).all(|w| w[0][0] < w[1][0]));
    let bytes = std::fs::read(dir.path().join("a.csv")).unwrap();
    assert!(!bytes.contains(&b'\r'));
    assert_eq!(manifest["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(manifest["parameters"]["theta"]["kind"], "rational");
}

#[test]
fn identical_flags_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("run");
    let args = [
        "evolve",
        "--P",
        "0,1,0,2",
        "--theta",
        "sqrt(2)/4",
        "--time",
        "2/5",
        "--modes",
        "128",
        "--method",
        "composition",
        "--out",
        prefix.to_str().unwrap(),
    ];
    ok(&args);
    let csv1 = std::fs::read(prefix.with_extension("csv")).unwrap();
    let mut json1 = read_json(&prefix.with_extension("json"));
    ok(&args);
    let csv2 = std::fs::read(prefix.with_extension("csv")).unwrap();
    let mut json2 = read_json(&prefix.with_extension("json"));
    assert_eq!(csv1, csv2);
    // Wall-clock time is the only field allowed to differ.
    json1.as_object_mut().unwrap().remove("duration_seconds");
    json2.as_object_mut().unwrap().remove("duration_seconds");
    assert_eq!(json1, json2);
}

#[test]
fn unreduced_time_fraction_is_reduced() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["--monomial", "3", "--theta", "1/4", "--modes", "64"];
    let (a, ma) = evolve(dir.path(), "a", &[&base[..], &["--time", "1/3"]].concat());
    let (b, mb) = evolve(dir.path(), "b", &[&base[..], &["--time", "2/6"]].concat());
    assert_eq!(a, b);
    assert_eq!(ma["parameters"]["time"]["fraction"], "1/3");
    assert_eq!(mb["parameters"]["time"]["fraction"], "1/3");
}

#[test]
fn methods_agree_on_figure_parameter_sets() {
    let dir = tempfile::tempdir().unwrap();
    for theta in ["1/4", "sqrt(2)/4"] {
        for n in ["2", "3", "4", "5"] {
            let base = ["--monomial", n, "--theta", theta, "--time", "1/3"];
            let (direct, _) = evolve(dir.path(), "d", &base);
            for method in ["composition", "correspondence"] {
                let (other, m) = evolve(
                    dir.path(),
                    "c",
                    &[&base[..], &["--method", method]].concat(),
                );
                let worst = direct
                    .iter()
                    .zip(&other)
                    .map(|(a, b)| (a[1] - b[1]).hypot(a[2] - b[2]))
                    .fold(0.0f64, f64::max);
                assert!(worst < 1e-8, "n={n} theta={theta} {method}: {worst:e}");
                let reported = m["residuals"]["profile_vs_direct"].as_f64().unwrap();
                assert!(reported < 1e-8);
            }
        }
    }
}

#[test]
fn rational_theta_matches_revival_construction() {
    let dir = tempfile::tempdir().unwrap();
    let (_, m) = evolve(
        dir.path(),
        "r",
        &["--monomial", "3", "--theta", "1/4", "--time", "1/3"],
    );
    let r = m["residuals"]["coefficients_vs_revival_construction"]
        .as_f64()
        .unwrap();
    assert!(r < 1e-8);
}

#[test]
fn file_initial_data_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    // The t = 0 profile of band-limited data, read back as initial data.
    let (first, _) = evolve(
        dir.path(),
        "s",
        &[
            "--monomial",
            "2",
            "--theta",
            "1/4",
            "--time",
            "0",
            "--modes",
            "16",
            "--initial",
            "smooth",
        ],
    );
    let path = dir.path().join("s.csv");
    let (second, _) = evolve(
        dir.path(),
        "t",
        &[
            "--monomial",
            "2",
            "--theta",
            "1/4",
            "--time",
            "0",
            "--modes",
            "16",
            "--initial",
            path.to_str().unwrap(),
        ],
    );
    for (a, b) in first.iter().zip(&second) {
        assert!((a[1] - b[1]).abs() < 1e-13 && (a[2] - b[2]).abs() < 1e-13);
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x");
    let out = out.to_str().unwrap();
    for args in [
        vec![
            "evolve",
            "--monomial",
            "3",
            "--theta",
            "pi/4",
            "--time",
            "1/3",
            "--out",
            out,
        ],
        vec![
            "evolve",
            "--monomial",
            "1",
            "--theta",
            "1/4",
            "--time",
            "1/3",
            "--out",
            out,
        ],
        vec![
            "evolve",
            "--monomial",
            "3",
            "--theta",
            "5/4",
            "--time",
            "1/3",
            "--out",
            out,
        ],
        vec!["weights", "--order", "2", "--time", "2/4"],
    ] {
        let o = revlab(&args);
        assert!(!o.status.success(), "{args:?} should fail");
        assert!(!o.stderr.is_empty());
    }
    // Missing problem flags are usage errors.
    assert_eq!(
        revlab(&["evolve", "--theta", "1/4", "--time", "1/3", "--out", out])
            .status
            .code(),
        Some(2)
    );
}

fn weights_json(order: &str, time: &str) -> Value {
    let out = ok(&["weights", "--order", order, "--time", time, "--json"]);
    serde_json::from_slice(&out.stdout).unwrap()
}

fn weight_values(v: &Value) -> Vec<(f64, f64)> {
    v["weights"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| (w["re"].as_f64().unwrap(), w["im"].as_f64().unwrap()))
        .collect()
}

#[test]
fn weights_examples() {
    let close = |got: &[(f64, f64)], want: &[f64]| {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g.0 - w).abs() < 1e-15 && g.1.abs() < 1e-15, "{got:?}");
        }
    };
    // m² ≡ m (mod 2) and m³ ≡ m (mod 3): both are single translations.
    let half = weights_json("2", "1/2");
    close(&weight_values(&half), &[0.0, 1.0]);
    assert!(half["residue_identity_error"].as_f64().unwrap() < 1e-15);
    close(&weight_values(&weights_json("3", "1/3")), &[0.0, 1.0, 0.0]);
    close(&weight_values(&weights_json("5", "1/1")), &[1.0]);

    let text = String::from_utf8(ok(&["weights", "--order", "2", "--time", "1/4"]).stdout).unwrap();
    assert!(text.contains("w_3 = "));
    assert!(text.contains("residue identity max error"));
}

#[test]
fn verify_suites_pass_and_report() {
    let out = ok(&[
        "verify", "--suite", "revival", "--n-max", "6", "--q-max", "64", "--J", "256",
    ]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], true);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["identity"].as_str().unwrap().contains("residue")));
    for c in checks {
        assert!(c["max_error"].as_f64().unwrap() < 1e-10);
    }
    let out = ok(&["verify", "--suite", "correspondence"]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], true);
}

#[test]
fn verify_usage_errors() {
    assert_eq!(revlab(&["verify", "--suite", ""]).status.code(), Some(2));
    assert_eq!(
        revlab(&["verify", "--suite", "nonsense"]).status.code(),
        Some(2)
    );
    assert_eq!(revlab(&["verify"]).status.code(), Some(2));
}

#[test]
fn fracdim_calibrations() {
    let line: Value =
        serde_json::from_slice(&ok(&["fracdim", "--calibrate", "line"]).stdout).unwrap();
    let d = line["report"]["dimension"].as_f64().unwrap();
    assert!((d - 1.0).abs() < 0.05, "{d}");
    let w: Value =
        serde_json::from_slice(&ok(&["fracdim", "--calibrate", "weierstrass"]).stdout).unwrap();
    let d = w["report"]["dimension"].as_f64().unwrap();
    assert!((d - 1.5).abs() < 0.1, "{d}");
}

#[test]
fn fracdim_of_fractal_profile() {
    let out = ok(&[
        "fracdim",
        "--monomial",
        "3",
        "--theta",
        "sqrt(2)/4",
        "--time",
        "1/3",
        "--modes",
        "16384",
        "--grid",
        "65536",
        "--part",
        "re",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let d = v["report"]["dimension"].as_f64().unwrap();
    assert!((1.35..=1.65).contains(&d), "{d}");
    assert!(v["report"]["r_squared"].as_f64().unwrap() >= 0.98);
}

#[test]
fn figures_write_panels_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    ok(&["figures", "--which", "4", "--outdir", d, "--modes", "256"]);
    let manifest = read_json(&dir.path().join("figures.json"));
    let panels = manifest["panels"].as_array().unwrap();
    assert_eq!(panels.len(), 2);
    for p in panels {
        let rows = read_csv(&dir.path().join(p["file"].as_str().unwrap()));
        assert_eq!(rows.len(), 1024);
        assert!(
            p["residuals"]["coefficients_vs_revival_construction"]
                .as_f64()
                .unwrap()
                < 1e-10
        );
    }

    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    ok(&["figures", "--which", "all", "--outdir", d, "--modes", "128"]);
    let manifest = read_json(&dir.path().join("figures.json"));
    assert_eq!(manifest["panels"].as_array().unwrap().len(), 9);
    let box_rows = read_csv(&dir.path().join("fig1_initial.csv"));
    assert_eq!(box_rows[0][1], 0.0);
    assert_eq!(box_rows[256][1], 1.0);
}

fn nls(dir: &Path, name: &str, extra: &[&str]) -> (Vec<[f64; 3]>, Value) {
    let prefix = dir.join(name);
    let mut args = vec!["nls", "--out", prefix.to_str().unwrap()];
    args.extend_from_slice(extra);
    ok(&args);
    (
        read_csv(&prefix.with_extension("csv")),
        read_json(&prefix.with_extension("json")),
    )
}

#[test]
fn nls_linear_limit_and_mass() {
    let dir = tempfile::tempdir().unwrap();
    let (_, m) = nls(
        dir.path(),
        "lin",
        &["--theta", "sqrt(2)/4", "--coupling", "0"],
    );
    assert!(
        m["residuals"]["difference_from_linear_flow"]
            .as_f64()
            .unwrap()
            < 1e-12
    );
    let (_, m) = nls(dir.path(), "zero", &["--theta", "1/4", "--amplitude", "0"]);
    assert_eq!(m["norms"]["final_l2"], 0.0);
    let (_, m) = nls(dir.path(), "mass", &["--theta", "1/4"]);
    assert!(m["norms"]["relative_change"].as_f64().unwrap() < 1e-10);
    assert_eq!(m["parameters"]["steps"], 2095);
}

#[test]
fn nls_zero_time_echoes_input() {
    let dir = tempfile::tempdir().unwrap();
    let (rows, _) = nls(
        dir.path(),
        "t0",
        &["--theta", "1/4", "--T", "0", "--modes", "32"],
    );
    let (reference, _) = evolve(
        dir.path(),
        "ref",
        &[
            "--monomial",
            "2",
            "--theta",
            "1/4",
            "--time",
            "0",
            "--modes",
            "32",
            "--initial",
            "smooth",
        ],
    );
    assert_eq!(rows, reference);
}
