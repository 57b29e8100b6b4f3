use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cloudinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cloudinv"))
        .args(args)
        .env_remove("CLOUD_INV_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let out = cloudinv(&full);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "cloud-invariants/1");
    v
}

fn code(args: &[&str]) -> i32 {
    cloudinv(args).status.code().unwrap()
}

fn write_csv(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

/// Within 5 units of the last printed digit; a description of the miss otherwise.
fn printed(what: &str, got: f64, text: &str) -> Option<String> {
    let want: f64 = text.parse().unwrap();
    let decimals = text.split('.').nth(1).map_or(0, str::len) as i32;
    let tol = 5.0 * 10f64.powi(-decimals);
    ((got - want).abs() > tol).then(|| format!("{what}: got {got}, printed {text} (±{tol:e})"))
}

#[test]
fn coeffs_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write_csv(dir.path(), "tri.csv", "x,y\n0,0\n1,1\n2,0\n");
    let v = json(&["coeffs", "--csv", &tri]);
    assert!(f(&v["coefficients"]["m"]).abs() < 1e-15);
    assert!((f(&v["coefficients"]["h"]) - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(v["collinear"], false);

    let line = write_csv(dir.path(), "line.csv", "0,0\r\n1,1\r\n\r\n2,2\r\n");
    let v = json(&["coeffs", "--csv", &line]);
    assert_eq!(v["collinear"], true);
    assert_eq!(f(&v["coefficients"]["m"]), 1.0);
    assert_eq!(f(&v["coefficients"]["h"]), 1.0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let one = write_csv(dir.path(), "one.csv", "1,1\n");
    let bad = write_csv(dir.path(), "bad.csv", "1,1\n2,oops\n");
    let vertical = write_csv(dir.path(), "vert.csv", "1,0\n1,1\n1,2\n");
    let horizontal = write_csv(dir.path(), "horiz.csv", "0,1\n1,1\n2,1\n3,1\n");

    assert_eq!(code(&["coeffs", "--csv", &one]), 2);
    assert_eq!(code(&["coeffs", "--csv", &bad]), 2);
    assert_eq!(code(&["coeffs", "--csv", &vertical]), 2);
    assert_eq!(code(&["coeffs", "--csv", "/nonexistent/cloud.csv"]), 2);
    assert_eq!(code(&["coeffs", "--gen", "ellipse", "--n", "1"]), 2);
    assert_eq!(
        code(&["transform", "--gen", "ellipse", "--matrix", "1,2;2,4"]),
        2
    );
    assert_eq!(
        code(&["transform", "--csv", &horizontal, "--matrix", "0,-1;1,0"]),
        3
    );
    assert_eq!(
        code(&["transform", "--coeffs", "0,0", "--matrix", "0,-1;1,0"]),
        3
    );
    assert_eq!(
        code(&[
            "invariant",
            "--gen",
            "ellipse",
            "--family",
            "linear:2,0;0,2|0,1;0,0",
            "--phi",
            "1"
        ]),
        2
    );
    assert_eq!(
        code(&[
            "invariant",
            "--gen",
            "ellipse",
            "--family",
            "linear:1,0;0,1|2,0;0,2",
            "--phi",
            "1"
        ]),
        4
    );
    assert_eq!(
        code(&["invariant", "--gen", "ellipse", "--matrix", "1,0;0,1"]),
        4
    );
    assert_eq!(
        code(&["invariant", "--gen", "ellipse", "--matrix", "3,0;0,3"]),
        4
    );
    assert_eq!(code(&["coeffs", "--gen", "ellipse"]), 0);
}

#[test]
fn transform_closed_form_matches_direct() {
    let v = json(&[
        "transform",
        "--gen",
        "two-segment",
        "--seed",
        "9",
        "--matrix",
        "1,0;0,2",
    ]);
    assert!(f(&v["discrepancy"]) <= 1e-9);
    let v = json(&[
        "transform",
        "--gen",
        "uniform-box",
        "--seed",
        "3",
        "--matrix",
        "[[0.4,-0.4],[-0.05,0.9]]",
    ]);
    assert!(f(&v["discrepancy"]) <= 1e-9 * f(&v["closed_form"]["h"]).abs().max(1.0));
}

#[test]
fn identity_has_zero_drift() {
    let v = json(&["transform", "--gen", "ellipse", "--matrix", "1,0;0,1"]);
    assert_eq!(f(&v["drift"]), 0.0);
    let v = json(&[
        "invariant",
        "--gen",
        "ellipse",
        "--family",
        "diag",
        "--phi",
        "1",
    ]);
    for inv in v["rows"][0]["invariants"].as_array().unwrap() {
        assert_eq!(inv["before"], inv["after"]);
        assert_eq!(f(&inv["abs_drift"]), 0.0);
    }
}

#[test]
fn family_invariant_drift() {
    let v = json(&[
        "invariant",
        "--gen",
        "ellipse",
        "--seed",
        "5",
        "--family",
        "upper",
        "--phi",
        "0.7",
    ]);
    let inv = &v["rows"][0]["invariants"][0];
    assert!(f(&inv["abs_drift"]) <= 1e-9, "{inv}");
    let v = json(&[
        "invariant",
        "--gen",
        "uniform-box",
        "--family",
        "diag",
        "--phi",
        "-0.5,2,3.5",
    ]);
    for row in v["rows"].as_array().unwrap() {
        let inv = row["invariants"].as_array().unwrap();
        assert_eq!(inv[0]["name"], "H/M^2");
        for i in inv {
            assert!(f(&i["rel_drift"]) <= 1e-9, "{i}");
        }
    }
}

#[test]
fn reference_fixture_from_coefficients() {
    let v = json(&["simulate", "--coeffs", "1.52244,2.46998"]);
    let cases = v["cases"].as_array().unwrap();
    let expect = [
        ("3.04488", "9.87992", "1.06565"),
        ("0.748882", "0.568896", "-0.0249396"),
        ("-0.0364518", "0.0143303", "-0.0126368"),
        ("-4.86159", "27.4371", "-0.000131745"),
    ];
    let mut misses = Vec::new();
    for (case, (m, h, inv)) in cases.iter().zip(expect) {
        let name = case["name"].as_str().unwrap();
        let value = &case["invariants"][0];
        misses.extend(printed(&format!("{name} M"), f(&case["after"]["m"]), m));
        misses.extend(printed(&format!("{name} H"), f(&case["after"]["h"]), h));
        misses.extend(printed(
            &format!("{name} invariant before"),
            f(&value["before"]),
            inv,
        ));
        misses.extend(printed(
            &format!("{name} invariant after"),
            f(&value["after"]),
            inv,
        ));
    }
    assert!(misses.is_empty(), "{}", misses.join("\n"));
}

#[test]
fn simulate_drift_is_small() {
    let v = json(&[
        "simulate",
        "--gen",
        "two-segment",
        "--n",
        "10000",
        "--seed",
        "42",
    ]);
    for case in v["cases"].as_array().unwrap() {
        for inv in case["invariants"].as_array().unwrap() {
            assert!(f(&inv["rel_drift"]) <= 1e-8, "{}: {inv}", case["name"]);
        }
    }
}

#[test]
fn simulate_collinear_pair() {
    let v = json(&["simulate", "--gen", "line", "--n", "2", "--noise", "0"]);
    for case in v["cases"].as_array().unwrap() {
        for inv in case["invariants"].as_array().unwrap() {
            if inv["name"] == "kernel" {
                assert!(f(&inv["before"]).abs() <= 1e-12, "{inv}");
                assert!(f(&inv["after"]).abs() <= 1e-12, "{inv}");
            }
        }
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "simulate",
        "--gen",
        "two-segment",
        "--n",
        "10000",
        "--seed",
        "42",
        "--json",
    ];
    let a = cloudinv(&args).stdout;
    let b = cloudinv(&args).stdout;
    assert_eq!(a, b);
    let mut par = args.to_vec();
    par.push("--parallel");
    assert_eq!(a, cloudinv(&par).stdout);

    let env_seeded = Command::new(env!("CARGO_BIN_EXE_cloudinv"))
        .args(["simulate", "--gen", "two-segment", "--n", "10000", "--json"])
        .env("CLOUD_INV_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(a, env_seeded.stdout);
}

#[test]
fn dump_points_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("img.csv");
    let v = json(&[
        "transform",
        "--gen",
        "ellipse",
        "--n",
        "50",
        "--matrix",
        "2,1;0,1",
        "--dump-points",
        out.to_str().unwrap(),
    ]);
    let again = json(&["coeffs", "--csv", out.to_str().unwrap()]);
    assert_eq!(again["coefficients"], v["direct"]);

    let base = dir.path().join("sim.csv");
    json(&[
        "simulate",
        "--gen",
        "ellipse",
        "--n",
        "50",
        "--dump-points",
        base.to_str().unwrap(),
    ]);
    for tag in ["original", "diag", "shear", "rotation", "general"] {
        assert!(dir.path().join(format!("sim-{tag}.csv")).exists(), "{tag}");
    }
}

#[test]
fn table_output() {
    let out = cloudinv(&["coeffs", "--coeffs", "2,4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("collinear    true"), "{text}");
}
