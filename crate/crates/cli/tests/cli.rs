use std::process::{Command, Output};

use serde_json::Value;

fn orthopoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthopoly"))
        .args(args)
        .env_remove("ORTHOPOLY_TOL")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn legendre_table_is_one_at_one() {
    let out = orthopoly(&["tabulate", "--family", "legendre", "--n-max", "4", "--grid=-1,0,1", "--format", "csv"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let mut rdr = csv::Reader::from_reader(&out.stdout[..]);
    let header = rdr.headers().unwrap().clone();
    assert_eq!(header.iter().collect::<Vec<_>>(), ["n", "-1.0", "0.0", "1.0"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 5);
    for (n, row) in rows.iter().enumerate() {
        let at_one: f64 = row[3].parse().unwrap();
        let at_minus_one: f64 = row[1].parse().unwrap();
        assert!((at_one - 1.0).abs() < 1e-14);
        assert!((at_minus_one - if n % 2 == 0 { 1.0 } else { -1.0 }).abs() < 1e-14);
    }
    assert_eq!(&rows[2][2], "-0.5");
    assert_eq!(&rows[4][2], "0.375");
}

#[test]
fn series_route_and_verification() {
    let out = orthopoly(&[
        "tabulate", "--family", "jacobi", "--alpha", "0.5", "--beta", "1.5", "--n-max", "12", "--grid", "-1:1:8", "--verify",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc = json(&out);
    assert!(doc["max_verify_gap"].as_f64().unwrap() < 1e-12);
    assert_eq!(doc["grid"].as_array().unwrap().len(), 9);
    assert_eq!(doc["tolerance"], 1e-10);

    let out = orthopoly(&["tabulate", "--family", "legendre", "--n-max", "4", "--grid", "1", "--method", "series", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().skip(1).all(|l| l.ends_with(",1.0")), "{text}");
}

#[test]
fn legendre_two_point_rule() {
    let out = orthopoly(&["quadrature", "--family", "legendre", "--n", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc = json(&out);
    let nodes: Vec<f64> = serde_json::from_value(doc["nodes"].clone()).unwrap();
    let weights: Vec<f64> = serde_json::from_value(doc["weights"].clone()).unwrap();
    let r = 1.0 / 3f64.sqrt();
    assert!((nodes[0] + r).abs() < 1e-15 && (nodes[1] - r).abs() < 1e-15);
    assert!(weights.iter().all(|w| (w - 1.0).abs() < 1e-14));
    assert_eq!(doc["exactness_degree"], 3);
    assert_eq!(doc["tolerance"], 1e-10);
}

#[test]
fn hermite_ode_at_degree_zero() {
    let out = orthopoly(&["check", "--family", "hermite", "--identity", "ode", "--n", "0"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc = json(&out);
    assert_eq!(doc["max_residual"], 0.0);
    assert_eq!(doc["pass"], true);
}

#[test]
fn every_identity_passes_for_a_valid_family() {
    for id in ["ode", "shift", "cd", "quadratic", "orthogonality"] {
        let out = orthopoly(&["check", "--family", "gegenbauer", "--lambda", "1.5", "--identity", id, "--n", "7"]);
        assert!(out.status.success(), "{id}: {}", stderr(&out));
    }
    let out = orthopoly(&["check", "--family", "hermite", "--identity", "limit", "--n", "3", "--x", "0.4"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(json(&out)["schedule"]["monotone"], true);
}

#[test]
fn failing_residual_exits_one() {
    // rounding alone exceeds 1e-300
    let args = ["--tol", "1e-300", "check", "--family", "jacobi", "--alpha", "0.3", "--beta", "0.7", "--identity", "cd", "--n", "12"];
    let out = orthopoly(&args);
    assert_eq!(out.status.code(), Some(1));
    let msg = stderr(&out);
    assert!(msg.contains("check cd") && msg.contains("1e-300"), "{msg}");
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn config_errors_exit_two_and_name_the_field() {
    let cases: [(&[&str], &str); 6] = [
        (&["zeros", "--family", "jacobi", "--alpha", "1", "--n", "3"], "--beta"),
        (&["--tol", "-1", "zeros", "--family", "hermite", "--n", "3"], "tol"),
        (&["zeros", "--n", "3"], "source"),
        (&["tabulate", "--family", "hermite", "--n-max", "3", "--grid", "0:1:0"], "grid"),
        (&["check", "--family", "hermite", "--identity", "quadratic", "--n", "3"], "identity"),
        (&["quadrature", "--family", "krawtchouk", "--p", "0.3", "--big-n", "4", "--n", "9"], "n"),
    ];
    for (args, field) in cases {
        let out = orthopoly(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stderr(&out).contains(field), "{args:?}: {}", stderr(&out));
    }
    let out = orthopoly(&["zeros", "--family", "hermite", "--recurrence", "x.json", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_orthopoly"))
        .args(["zeros", "--family", "hermite", "--n", "4"])
        .env("ORTHOPOLY_TOL", "1e-8")
        .output()
        .unwrap();
    assert_eq!(json(&out)["tolerance"], 1e-8);
    let out = Command::new(env!("CARGO_BIN_EXE_orthopoly"))
        .args(["zeros", "--family", "hermite", "--n", "4"])
        .env("ORTHOPOLY_TOL", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn recurrence_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("laguerre.json");
    let out = orthopoly(&[
        "recurrence", "--family", "laguerre", "--alpha", "0.5", "--n-max", "20", "--form", "monic", "--output",
        table.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&table).unwrap()).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["form"], "monic");
    let mu0 = doc["mu0"].as_f64().unwrap().to_string();

    let from_file = json(&orthopoly(&["quadrature", "--recurrence", table.to_str().unwrap(), "--mu0", &mu0, "--n", "6"]));
    let from_family = json(&orthopoly(&["quadrature", "--family", "laguerre", "--alpha", "0.5", "--n", "6"]));
    for key in ["nodes", "weights"] {
        let a: Vec<f64> = serde_json::from_value(from_file[key].clone()).unwrap();
        let b: Vec<f64> = serde_json::from_value(from_family[key].clone()).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-12 * y.abs().max(1.0), "{key}: {x} vs {y}");
        }
    }
    let zeros = orthopoly(&["zeros", "--recurrence", table.to_str().unwrap(), "--n", "22"]);
    assert_eq!(zeros.status.code(), Some(2), "rows 0..=20 reach degree 21 at most");
}

#[test]
fn measure_files() {
    let dir = tempfile::tempdir().unwrap();
    let points = dir.path().join("points.json");
    std::fs::write(&points, r#"{"schema":1,"kind":"points","nodes":[-1,0,1],"weights":[1,2,1]}"#).unwrap();
    let out = orthopoly(&["quadrature", "--measure", points.to_str().unwrap(), "--n", "3"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let nodes: Vec<f64> = serde_json::from_value(json(&out)["nodes"].clone()).unwrap();
    assert!((nodes[0] + 1.0).abs() < 1e-14 && nodes[1].abs() < 1e-14 && (nodes[2] - 1.0).abs() < 1e-14);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"schema":2,"kind":"stieltjes_wigert"}"#).unwrap();
    let out = orthopoly(&["diagnose", "--measure", bad.to_str().unwrap(), "--carleman"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("schema"));
}

#[test]
fn diagnose_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let sw = dir.path().join("sw.json");
    std::fs::write(&sw, r#"{"schema":1,"kind":"stieltjes_wigert"}"#).unwrap();
    let out = orthopoly(&["diagnose", "--measure", sw.to_str().unwrap(), "--carleman", "--rho", "1,1"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["carleman"]["verdict"], "converges");
    assert_eq!(doc["rho"]["verdict"], "converges");
    assert!(doc["rho"]["rho"].as_f64().unwrap() > 0.0);

    let out = orthopoly(&["diagnose", "--family", "hermite", "--carleman", "--true-interval", "64", "--support", "100"]);
    let doc = json(&out);
    assert_eq!(doc["carleman"]["verdict"], "diverges");
    assert_eq!(doc["true_interval"]["limits"], serde_json::json!(["-inf", "inf"]));
    assert_eq!(doc["support"]["class"], "unbounded");

    // a section error is reported in the document, not through the exit status
    let out = orthopoly(&["diagnose", "--family", "legendre", "--markov", "0.5"]);
    assert!(out.status.success());
    assert!(json(&out)["markov"]["error"].as_str().unwrap().contains("inside the support"));

    let out = orthopoly(&["diagnose", "--family", "legendre", "--support", "50", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn documents_are_byte_stable() {
    let args = ["quadrature", "--family", "jacobi", "--alpha", "0.25", "--beta", "-0.5", "--n", "12"];
    let first = orthopoly(&args).stdout;
    for _ in 0..3 {
        assert_eq!(orthopoly(&args).stdout, first);
    }
    let args = ["tabulate", "--family", "charlier", "--a", "3", "--n-max", "9", "--grid", "0:9:9", "--format", "csv"];
    let first = orthopoly(&args).stdout;
    assert_eq!(orthopoly(&args).stdout, first);
}
