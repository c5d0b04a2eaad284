use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn riaho(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riaho")).env_remove("RIAHO_CONFIG").arg("--out").arg(dir).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path).unwrap().lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn trajectory_sidecars() {
    let d = tempfile::tempdir().unwrap();
    let o = riaho(d.path(), &["trajectory", "--g", "2/3", "--r1", "1", "--r2", "2", "--name", "a"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let m = json(&d.path().join("a.meta.json"));
    assert_eq!(m["period_in_pi_over_omega"], "6");
    assert!((m["period"].as_f64().unwrap() - 6.0 * std::f64::consts::PI).abs() < 1e-12);
    assert_eq!(m["schema_version"], 1);
    let rows = csv_rows(&d.path().join("a.csv"));
    assert_eq!(rows.len(), 2001);
    let first: Vec<f64> = rows[0][1..3].iter().map(|s| s.parse().unwrap()).collect();
    let last: Vec<f64> = rows[2000][1..3].iter().map(|s| s.parse().unwrap()).collect();
    assert!((first[0] - last[0]).abs() < 1e-9 && (first[1] - last[1]).abs() < 1e-9);

    riaho(d.path(), &["trajectory", "--g", "1", "--r1", "1", "--r2", "1", "--name", "e"]);
    let m = json(&d.path().join("e.meta.json"));
    assert_eq!(m["through_origin"], true);
    assert_eq!(m["cusp"], false);

    riaho(d.path(), &["trajectory", "--g", "1/2", "--r1", "1", "--r2", "6", "--name", "b"]);
    let m = json(&d.path().join("b.meta.json"));
    assert_eq!(m["closed"], true);
    assert_eq!(m["period_in_pi_over_omega"], "4");

    riaho(d.path(), &["trajectory", "--g", "1/3", "--r1", "1", "--r2", "2", "--name", "c"]);
    assert_eq!(json(&d.path().join("c.meta.json"))["cusp"], true);

    let o = riaho(d.path(), &["trajectory", "--g-float", "0.41421356", "--r1", "1", "--r2", "1", "--window", "5", "--name", "open"]);
    assert_eq!(code(&o), 0);
    let m = json(&d.path().join("open.meta.json"));
    assert_eq!(m["closed"], false);
    assert_eq!(m["period"], Value::Null);
}

#[test]
fn spectrum_and_degeneracy_tables() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&riaho(d.path(), &["degeneracy", "--g", "1/3", "--emax", "3"])), 0);
    let rows = csv_rows(&d.path().join("degeneracy.csv"));
    let row = rows.iter().find(|r| r[4] == "7/3").expect("level 7/3");
    assert_eq!(row[7], "0:2 1:0");
    assert_eq!(row[5], "finite");

    assert_eq!(code(&riaho(d.path(), &["degeneracy", "--g", "0", "--emax", "5", "--name", "iso"])), 0);
    let rows = csv_rows(&d.path().join("iso.csv"));
    let sizes: Vec<usize> = rows.iter().map(|r| r[6].parse().unwrap()).collect();
    assert_eq!(sizes, vec![1, 2, 3, 4, 5]);

    assert_eq!(code(&riaho(d.path(), &["degeneracy", "--g", "1", "--emax", "1", "--name", "lll"])), 0);
    let rows = csv_rows(&d.path().join("lll.csv"));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][5], "infinite");

    assert_eq!(code(&riaho(d.path(), &["--set", "hbar=1/2", "spectrum", "--g", "1/3", "--nmax", "2"])), 0);
    let rows = csv_rows(&d.path().join("spectrum.csv"));
    assert_eq!(rows.len(), 9);
    // (1,0): hbar omega (4/3 + 1) = 7/6 with hbar = 1/2
    let r = rows.iter().find(|r| r[0] == "1" && r[1] == "0").unwrap();
    assert_eq!((r[2].as_str(), r[3].as_str()), ("7", "6"));
    let twin = rows.iter().find(|r| r[0] == "0" && r[1] == "2").unwrap();
    assert_eq!(r[5], twin[5]);
}

#[test]
fn exit_codes() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&riaho(d.path(), &["degeneracy", "--g-float", "0.3", "--emax", "3"])), 2);
    assert_eq!(code(&riaho(d.path(), &["coherent", "--alpha", "1"])), 2);
    assert_eq!(code(&riaho(d.path(), &["trajectory", "--g", "1/0", "--r1", "1", "--r2", "1"])), 2);
    assert_eq!(code(&riaho(d.path(), &["trajectory", "--g", "1", "--r1", "-1", "--r2", "1"])), 2);
    assert_eq!(code(&riaho(d.path(), &["--set", "n=3", "verify", "landau"])), 2);
    assert_eq!(code(&riaho(d.path(), &["--set", "nope=1", "verify", "landau"])), 2);
    assert_eq!(code(&riaho(d.path(), &["landau", "--omega-b", "1"])), 2);
    assert_eq!(code(&riaho(d.path(), &["bogus"])), 2);
    assert_eq!(code(&riaho(d.path(), &["--set", "tol_map=1e-300", "verify", "landau"])), 1);
    assert_eq!(code(&riaho(d.path(), &["verify", "landau"])), 0);

    let cfg = d.path().join("bad.conf");
    std::fs::write(&cfg, "n = 2\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_riaho")).env("RIAHO_CONFIG", &cfg).args(["verify", "landau"]).output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn config_file_from_environment() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("run.conf");
    std::fs::write(&cfg, format!("# test\nformat = json\nout = {}\nhbar = 1/2\n", d.path().join("o").display())).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_riaho")).env("RIAHO_CONFIG", &cfg).args(["spectrum", "--g", "0", "--nmax", "1"]).output().unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let t = json(&d.path().join("o/spectrum.json"));
    assert_eq!(t["columns"][2], "E_exact_num");
    assert_eq!(t["rows"][0][3], 2);
    assert_eq!(t["rows"][0][4], 0.5);
}

#[test]
fn reports_follow_the_schema_and_are_reproducible() {
    let d = tempfile::tempdir().unwrap();
    let schema: Value = serde_json::from_str(include_str!("../schemas/verification_report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for suite in ["algebra", "classical", "landau"] {
        assert_eq!(code(&riaho(d.path(), &["verify", suite])), 0);
        let path = d.path().join(format!("verify-{}.json", suite));
        let rep = json(&path);
        let errors: Vec<String> = validator.iter_errors(&rep).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{:?}", errors);
        assert_eq!(rep["pass"], true);
        let first = std::fs::read(&path).unwrap();
        riaho(d.path(), &["verify", suite]);
        assert_eq!(first, std::fs::read(&path).unwrap(), "{} report differs between runs", suite);
    }
    assert_eq!(code(&riaho(d.path(), &["verify", "landau", "--timing"])), 0);
    let rep = json(&d.path().join("verify-landau.json"));
    assert!(validator.is_valid(&rep));
    assert!(rep["checks"][0]["elapsed"].as_f64().is_some());

    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [a.path(), b.path()] {
        riaho(dir, &["coherent", "--alpha", "0.5,-0.2", "--beta", "0.1,0.3", "--t", "0.7", "--g", "1/3"]);
        riaho(dir, &["eigenstate", "--n1", "2", "--n2", "1"]);
    }
    for f in ["coherent.csv", "coherent.meta.json", "eigenstate.csv", "eigenstate.meta.json"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap(), "{}", f);
    }
}

#[test]
fn coherent_and_landau_outputs() {
    let d = tempfile::tempdir().unwrap();
    let o = riaho(d.path(), &["coherent", "--alpha", "1,0", "--beta", "0.5,0.25", "--gamma", "3.141592653589793", "--grid=-1:1:3"]);
    assert_eq!(code(&o), 0);
    let m = json(&d.path().join("coherent.meta.json"));
    assert_eq!(m["pass"], true);
    let rot = &m["rotated_parameters"];
    assert!((rot[0][0].as_f64().unwrap() + 1.0).abs() < 1e-15);
    assert!((rot[1][0].as_f64().unwrap() + 0.5).abs() < 1e-15 && (rot[1][1].as_f64().unwrap() + 0.25).abs() < 1e-15);
    assert_eq!(csv_rows(&d.path().join("coherent.csv")).len(), 9);

    let o = riaho(d.path(), &["landau", "--omega-b", "3/4", "--lambda", "7/16"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["phase"], "euclid-equivalent");
    assert_eq!((v["g_num"].as_str(), v["g_den"].as_str()), (Some("3"), Some("4")));
    assert_eq!(v["omega"], 1.0);
    let o = riaho(d.path(), &["landau", "--omega-b", "1", "--lambda", "0"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["phase"], "landau");
    let o = riaho(d.path(), &["landau", "--omega-b", "1", "--lambda", "1"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["g_float"].as_f64().is_some() && v["g_num"].is_null());
    let o = riaho(d.path(), &["landau", "--k", "1", "--m", "1", "--omega-cap", "-2"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["phase"], "minkowski-equivalent");
    assert_eq!(v["g_num"], "-2");
    let o = riaho(d.path(), &["landau", "--k", "0", "--m", "1", "--omega-cap", "1", "--float"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["phase"], "critical");
    assert_eq!(json(&d.path().join("landau.json")), v);
}

#[test]
fn lissajous_closes() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&riaho(d.path(), &["lissajous", "--omega1", "3", "--omega2", "5", "--a1", "1", "--b1", "0.3", "--a2", "0.4", "--b2", "0.8"])), 0);
    let m = json(&d.path().join("lissajous.meta.json"));
    assert!(m["closure_residual"].as_f64().unwrap() < 1e-9);
    assert_eq!(code(&riaho(d.path(), &["lissajous", "--omega1", "1", "--omega2", "1.41421356237x"])), 2);
}
