use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semirandom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = bin(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn fails(args: &[&str]) -> String {
    let out = bin(args);
    assert!(!out.status.success(), "{args:?} should fail");
    String::from_utf8(out.stderr).unwrap()
}

#[test]
fn simulate_writes_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("runs.csv");
    let edges = dir.path().join("edges.csv");
    ok(&[
        "simulate",
        "--n",
        "500",
        "--t",
        "1500",
        "--strategy",
        "alg1",
        "--seed",
        "4",
        "--reps",
        "3",
        "--out",
        csv.to_str().unwrap(),
        "--edges",
        edges.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("seed,n,t,strategy"));
    assert!(lines[1].starts_with("4,500,1500,alg1,"));
    let meta: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("runs.csv.meta.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(meta["schema_version"], 1);
    assert_eq!(meta["config"]["n"], 500);

    let verify = ok(&["verify", "--edges", edges.to_str().unwrap(), "--n", "500"]);
    let report: serde_json::Value = serde_json::from_str(&verify).unwrap();
    assert_eq!(report["report"]["rounds"], 1500);
}

#[test]
fn simulate_json_and_params() {
    let out = ok(&[
        "simulate",
        "--n",
        "2000",
        "--gamma",
        "1",
        "--strategy",
        "alg2",
        "--param",
        "half=2",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["clique_order"], 5);
    assert_eq!(rows[0]["clique_verified"], true);
}

#[test]
fn simulate_is_deterministic() {
    let args = [
        "simulate",
        "--n",
        "3000",
        "--beta",
        "10",
        "--strategy",
        "greedy",
        "--seed",
        "9",
        "--reps",
        "4",
        "--metrics",
        "all",
    ];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn sweep_covers_grid() {
    let out = ok(&[
        "sweep",
        "--n",
        "1000",
        "--t",
        "2000",
        "--strategy",
        "alg1",
        "--reps",
        "2",
        "--vary",
        "n=1000,2000",
        "--vary",
        "t=1000,2000,3000",
    ]);
    assert_eq!(out.lines().count(), 1 + 6);
}

#[test]
fn bounds_table_and_json() {
    let out = ok(&["bounds", "--n", "1000000", "--t", "1000000"]);
    assert!(out.lines().any(|l| l == "regime,small"));
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["bounds", "--n", "1e6", "--gamma", "1", "--json"])).unwrap();
    let xi = v["bounds"]["xi"].as_f64().unwrap();
    assert!((xi - std::f64::consts::E).abs() < 1e-9);
}

#[test]
fn ode_profile() {
    let out = ok(&["ode", "--lambda", "2", "--step", "1e-3"]);
    let mass: f64 = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((mass - 1.0).abs() < 1e-6, "mass {mass}");
}

#[test]
fn figures_rows() {
    let out = ok(&["figures", "--points", "10"]);
    assert_eq!(out.lines().count(), 11);
    assert!(out.starts_with("gamma,xi,lower,upper,ratio"));
}

#[test]
fn verify_rejects_non_clique() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("e.csv");
    std::fs::write(&edges, "round,square,circle\n1,0,1\n2,1,2\n").unwrap();
    let v: serde_json::Value = serde_json::from_str(&ok(&[
        "verify",
        "--edges",
        edges.to_str().unwrap(),
        "--clique",
        "0,1,2",
    ]))
    .unwrap();
    assert_eq!(v["report"]["clique"]["verified"], false);
    let v: serde_json::Value = serde_json::from_str(&ok(&[
        "verify",
        "--edges",
        edges.to_str().unwrap(),
        "--clique",
        "1,2",
    ]))
    .unwrap();
    assert_eq!(v["report"]["clique"]["verified"], true);
}

#[test]
fn bad_input_exits_with_error() {
    assert!(fails(&["simulate", "--n", "100", "--t", "0", "--strategy", "alg1"]).contains("error"));
    assert!(
        fails(&["simulate", "--n", "100", "--t", "10", "--strategy", "nope"]).contains("error")
    );
    assert!(fails(&[
        "simulate",
        "--n",
        "100",
        "--t",
        "10",
        "--gamma",
        "1",
        "--strategy",
        "alg1"
    ])
    .contains("error"));
    assert!(fails(&["ode", "--lambda", "-1"]).contains("error"));
    assert!(fails(&["verify", "--edges", "/nonexistent/edges.csv"]).contains("error"));
    fails(&["figures", "--gamma-min", "10", "--gamma-max", "1"]);
}
