use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn harmonia(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harmonia")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "exit {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Rows of a CSV table as `header -> value` lookups.
fn rows(csv: &str) -> Vec<Vec<(String, String)>> {
    let mut lines = csv.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(String::from).collect();
    lines.map(|l| header.iter().cloned().zip(l.split(',').map(String::from)).collect()).collect()
}

fn field<'a>(row: &'a [(String, String)], name: &str) -> &'a str {
    &row.iter().find(|(k, _)| k == name).unwrap_or_else(|| panic!("no column {name}")).1
}

fn num(row: &[(String, String)], name: &str) -> f64 {
    field(row, name).parse().unwrap()
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

fn c(re: f64, im: f64) -> Value {
    json!({"re": re, "im": im})
}

/// Values of 1 + 2 z - 0.5i z^{-3} on the 32-point grid.
fn band_limited(n: usize) -> Value {
    let values: Vec<Value> = (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            let (re, im) = (1.0 + 2.0 * t.cos() - 0.5 * (3.0 * t).sin(), 2.0 * t.sin() - 0.5 * (3.0 * t).cos());
            c(re, im)
        })
        .collect();
    json!({"dim": 1, "N": n, "values": values})
}

fn torus_sample() -> Value {
    let points: Vec<Value> = (0..8)
        .flat_map(|j| {
            (0..8).map(move |k| {
                let (a, b) = (std::f64::consts::TAU * j as f64 / 8.0, std::f64::consts::TAU * k as f64 / 8.0);
                json!([c(a.cos(), a.sin()), c(b.cos(), b.sin())])
            })
        })
        .collect();
    json!({"n": 2, "points": points, "flags": {"completely_circular": true, "bounded": true}})
}

#[test]
fn volterra_demo_matches_inverse_factorials() {
    let out = stdout(&harmonia(&["demo", "volterra", "--n", "6", "--grid", "2000"]));
    let rows = rows(&out);
    assert_eq!(rows.len(), 6);
    let mut fact = 1.0;
    for (i, r) in rows.iter().enumerate() {
        fact *= (i + 1) as f64;
        assert_eq!(num(r, "n") as usize, i + 1);
        assert!((num(r, "inv_factorial") - 1.0 / fact).abs() <= 1e-15);
        assert!(num(r, "rel_error") <= 1e-2);
    }
}

#[test]
fn parseval_sides_agree() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", &band_limited(32));
    let r = &rows(&stdout(&harmonia(&["torus", "parseval", &f])))[0];
    let (a, b) = (num(r, "sum_of_squares"), num(r, "energy_integral"));
    // 1 + 4 + 0.25
    assert!((a - 5.25).abs() <= 1e-12);
    assert!((a - b).abs() <= 1e-12);
}

#[test]
fn analyze_and_synth_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", &band_limited(32));
    let table: Value = serde_json::from_str(&stdout(&harmonia(&["torus", "analyze", &f, "--band", "4"]))).unwrap();
    let coeffs = table["coeffs"].as_array().unwrap();
    let get = |k: i64| coeffs.iter().find(|e| e["alpha"] == json!([k])).map(|e| (e["re"].as_f64().unwrap(), e["im"].as_f64().unwrap()));
    let (re, _) = get(1).unwrap();
    assert!((re - 2.0).abs() <= 1e-14);
    let (_, im) = get(-3).unwrap();
    assert!((im + 0.5).abs() <= 1e-14);

    let t = write(dir.path(), "t.json", &table);
    let back: Value = serde_json::from_str(&stdout(&harmonia(&["torus", "synth", &t, "--n", "32"]))).unwrap();
    let orig = band_limited(32);
    for (x, y) in back["values"].as_array().unwrap().iter().zip(orig["values"].as_array().unwrap()) {
        assert!((x["re"].as_f64().unwrap() - y["re"].as_f64().unwrap()).abs() <= 1e-13);
        assert!((x["im"].as_f64().unwrap() - y["im"].as_f64().unwrap()).abs() <= 1e-13);
    }
}

#[test]
fn polynomial_hull_certificates_check_out() {
    let dir = tempfile::tempdir().unwrap();
    let sample = write(dir.path(), "sample.json", &torus_sample());

    let outside = stdout(&harmonia(&["hull", "pol", &sample, "--z", "1.5,0", "--z", "0.2,0.1"]));
    let cert: Value = serde_json::from_str(&outside).unwrap();
    assert_eq!(cert["evidence"]["kind"], "monomial_witness");
    let cert_path = write(dir.path(), "cert.json", &cert);
    let ok = stdout(&harmonia(&["hull", "check-cert", &cert_path, &sample]));
    assert_eq!(field(&rows(&ok)[0], "verified"), "true");

    // the witness no longer beats the sample once z is pulled inside
    let mut forged = cert.clone();
    forged["query"] = json!({"complex": [c(0.9, 0.0), c(0.2, 0.1)]});
    let forged = write(dir.path(), "forged.json", &forged);
    assert_eq!(harmonia(&["hull", "check-cert", &forged, &sample]).status.code(), Some(4));

    let inside = stdout(&harmonia(&["hull", "pol", &sample, "--z", "0.5,0.5", "--z", "0,-1"]));
    let cert: Value = serde_json::from_str(&inside).unwrap();
    assert_eq!(cert["evidence"]["kind"], "inside_convex_combination");
    let cert_path = write(dir.path(), "inside.json", &cert);
    assert!(harmonia(&["hull", "check-cert", &cert_path, &sample]).status.success());
}

#[test]
fn convex_hull_certificates_check_out() {
    let dir = tempfile::tempdir().unwrap();
    let sample = write(dir.path(), "sample.json", &torus_sample());
    for z in [["0.1,0", "0,0.2"], ["1.2,0", "0,0"]] {
        let out = stdout(&harmonia(&["hull", "convex", &sample, "--z", z[0], "--z", z[1]]));
        let cert = write(dir.path(), "cert.json", &serde_json::from_str(&out).unwrap());
        assert!(harmonia(&["hull", "check-cert", &cert, &sample]).status.success());
    }
}

#[test]
fn pol_demo_classifies_the_bidisk() {
    let out = stdout(&harmonia(&["demo", "pol"]));
    let rows = rows(&out);
    assert_eq!(rows.len(), 21 * 21);
    for r in &rows {
        assert_eq!(field(r, "inside"), field(r, "expected"));
        assert_eq!(field(r, "verified"), "true");
    }
}

#[test]
fn eb_demo_finds_the_balanced_monomials() {
    let out = stdout(&harmonia(&["demo", "eb", "--b", "1/2", "--degree", "9"]));
    for r in rows(&out) {
        let (a1, a2): (u32, u32) = (field(&r, "alpha1").parse().unwrap(), field(&r, "alpha2").parse().unwrap());
        assert_eq!(field(&r, "status") == "bounded", a2 == 2 * a1, "({a1}, {a2})");
    }
    let out = stdout(&harmonia(&["demo", "eb", "--b", "sqrt(2)", "--degree", "20"]));
    assert!(rows(&out).iter().all(|r| field(r, "status") == "unbounded"));
}

#[test]
fn demos_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["demo", "gelfand", "--seed", "3"],
        vec!["demo", "poisson"],
        vec!["demo", "integral"],
    ] {
        let a = dir.path().join("a.csv");
        let b = dir.path().join("b.csv");
        for p in [&a, &b] {
            let mut full = args.clone();
            full.extend(["--output", p.to_str().unwrap()]);
            assert!(harmonia(&full).status.success());
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
}

#[test]
fn integral_and_poisson_demos_converge() {
    let out = stdout(&harmonia(&["demo", "integral"]));
    let last = rows(&out).pop().unwrap();
    assert!(num(&last, "error") <= 1e-8);
    let out = stdout(&harmonia(&["demo", "poisson"]));
    let errs: Vec<f64> = rows(&out).iter().map(|r| num(r, "error")).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn gelfand_demo_stays_above_the_spectral_radius() {
    let out = stdout(&harmonia(&["demo", "gelfand", "--max-power", "128"]));
    let rows = rows(&out);
    let eig = num(&rows[0], "max_abs_eigenvalue");
    assert!(rows.iter().all(|r| num(r, "root_norm") >= eig * (1.0 - 1e-9)));
    assert!((num(rows.last().unwrap(), "running_min") - eig).abs() <= 0.05 * (1.0 + eig));
}

#[test]
fn sequence_commands() {
    let dir = tempfile::tempdir().unwrap();
    let v = write(dir.path(), "v.json", &json!({"entries": [c(3.0, 0.0), c(0.0, 4.0)]}));
    let r = &rows(&stdout(&harmonia(&["seq", "norm", &v, "--p", "2"])))[0];
    assert!((num(r, "norm") - 5.0).abs() <= 1e-15);
    let r = &rows(&stdout(&harmonia(&["seq", "norm", &v, "--p", "inf"])))[0];
    assert_eq!(num(r, "norm"), 4.0);
    let dual: Value = serde_json::from_str(&stdout(&harmonia(&["seq", "dual", &v, "--p", "2"]))).unwrap();
    assert!((dual["value"].as_f64().unwrap() - 5.0).abs() <= 1e-15);
    let r = &rows(&stdout(&harmonia(&["seq", "pairing", &v, &v])))[0];
    // 9 + (4i)^2
    assert!((num(r, "re") + 7.0).abs() <= 1e-15);
}

#[test]
fn algebra_commands() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", &json!({"d": 2, "entries": [c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -0.25)]}));
    let r = &rows(&stdout(&harmonia(&["alg", "norm", &m])))[0];
    assert!((num(r, "norm") - 0.5).abs() <= 1e-12);
    let inv: Value = serde_json::from_str(&stdout(&harmonia(&["alg", "invert", &m]))).unwrap();
    assert!((inv["inverse"]["entries"][0]["re"].as_f64().unwrap() - 2.0).abs() <= 1e-11);
    assert!(inv["residual"].as_f64().unwrap() <= 1e-12);
    let cstar = stdout(&harmonia(&["alg", "cstar", &m]));
    assert!(cstar.contains("cstar_ok,true") && cstar.contains("powers_ok,true"));
}

#[test]
fn line_commands() {
    let dir = tempfile::tempdir().unwrap();
    let mu = write(dir.path(), "mu.json", &json!({"atoms": [{"u": [0.5], "re": 1.0, "im": 0.0}, {"u": [-0.25], "re": 0.0, "im": 2.0}]}));
    let nu = write(dir.path(), "nu.json", &json!({"atoms": [{"u": [0.25], "re": 1.0, "im": 0.0}]}));
    let conv: Value = serde_json::from_str(&stdout(&harmonia(&["line", "measure", &mu, "--nu", &nu]))).unwrap();
    assert_eq!(conv["atoms"][0]["u"], json!([0.75]));
    assert_eq!(conv["atoms"][1]["u"], json!([0.0]));
    let r = &rows(&stdout(&harmonia(&["line", "poisson"])))[0];
    assert!(num(r, "error") <= 1e-10);

    let t = rows(&stdout(&harmonia(&["line", "measure", &mu, "--xi", "-2", "--xi", "4"])));
    // mu^(xi) = e^{-i xi/2} + 2i e^{i xi/4}
    for (r, xi) in t.iter().zip([-2.0f64, 4.0]) {
        let re = (xi / 2.0).cos() - 2.0 * (xi / 4.0).sin();
        let im = -(xi / 2.0).sin() + 2.0 * (xi / 4.0).cos();
        assert!((num(r, "re") - re).abs() <= 1e-14 && (num(r, "im") - im).abs() <= 1e-14);
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(harmonia(&["torus", "parseval", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(harmonia(&["torus", "parseval", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(harmonia(&["demo", "volterra", "--n", "six"]).status.code(), Some(2));
    // a power outside 1..=12 is a precondition violation
    assert_eq!(harmonia(&["demo", "volterra", "--n", "13"]).status.code(), Some(3));
    let big = write(dir.path(), "big.json", &json!({"d": 1, "entries": [c(2.0, 0.0)]}));
    assert_eq!(harmonia(&["alg", "invert", &big]).status.code(), Some(3));
}
