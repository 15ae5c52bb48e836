use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn lazval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lazval"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = lazval(&full);
    let v: Value = serde_json::from_str(stdout(&out).trim()).expect("one JSON object");
    assert_eq!(v["schema"], "lazval/1");
    (v, out.status.code().unwrap())
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn val_of_xy_at_origin() {
    let out = lazval(&["val", "x*y", "--vars", "x,y", "--at", "(0,0)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "valuation: (1,1)\norder: 2\n");

    let (v, code) = json(&["val", "x*y", "--vars", "x,y", "--at", "(0,0)"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "val");
    assert_eq!(v["valuation"], serde_json::json!([1, 1]));
    assert_eq!(v["order"], 2);
    assert_eq!(v["ok"], true);
}

#[test]
fn val_on_the_circle() {
    let (v, _) = json(&["val", "x^2+y^2-1", "--vars", "x,y", "--at", "(1,0)"]);
    assert_eq!(v["valuation"], serde_json::json!([0, 2]));
    assert_eq!(v["order"], 1);
    let (v, _) = json(&["val", "x^2+y^2-1", "--vars", "x,y", "--at", "(3/5,4/5)"]);
    assert_eq!(v["valuation"], serde_json::json!([0, 1]));
}

#[test]
fn order_command() {
    let (v, code) = json(&["order", "x*z-y^2", "--vars", "x,y,z", "--at", "(0,0,0)"]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 2);
}

#[test]
fn lazeval_examples() {
    let cases = [
        ("x^2+y^2-1", "x,y", "(1/2)", "y^2 - 3/4", false),
        ("x*y", "x,y", "(0)", "y", true),
        ("x*z-y^2", "x,y,z", "(0,0)", "-1", true),
    ];
    for (f, vars, at, residual, nullified) in cases {
        let (v, code) = json(&["lazeval", f, "--vars", vars, "--at", at]);
        assert_eq!(code, 0, "{f}");
        assert_eq!(v["residual"], residual, "{f}");
        assert_eq!(v["nullified"], nullified, "{f}");
    }
    let (v, _) = json(&["lazeval", "x*z-y^2", "--vars", "x,y,z", "--at", "(0,0)"]);
    assert_eq!(v["prefix"], serde_json::json!([0, 2]));
}

#[test]
fn project_sphere_and_saddle() {
    let path = temp_file(
        "sphere_saddle.txt",
        "# sphere and saddle\nvars: x,y,z\nx^2+y^2+z^2-1\nz-x*y\n",
    );
    let (v, code) = json(&["project", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["main_var"], "z");
    let factors: Vec<&str> = v["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["polynomial"].as_str().unwrap())
        .collect();
    assert_eq!(factors.len(), 3);
    for expected in ["x^2 + y^2 - 1", "x*y", "x^2*y^2 + x^2 + y^2 - 1"] {
        assert!(
            factors.contains(&expected),
            "{expected} missing from {factors:?}"
        );
    }
}

#[test]
fn project_other_main_variable() {
    let path = temp_file("circle_x.txt", "x^2+y^2-1\n");
    let (v, code) = json(&[
        "project",
        path.to_str().unwrap(),
        "--vars",
        "x,y",
        "--main-var",
        "x",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["factors"][0]["polynomial"], "y^2 - 1");
}

#[test]
fn project_errors() {
    let empty = temp_file("empty_basis.txt", "vars: x,y\n# nothing\n");
    let (v, code) = json(&["project", empty.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["ok"], false);
    assert_eq!(v["error"]["kind"], "usage");

    let bad = temp_file("bad_basis.txt", "vars: x,y\nx^2 +* y\n");
    let out = lazval(&["project", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let circle = temp_file("circle_plain.txt", "vars: x,y\nx^2+y^2-1\n");
    let out = lazval(&["project", circle.to_str().unwrap(), "--main-var", "w"]);
    assert_eq!(out.status.code(), Some(3));

    let out = lazval(&["project", "/nonexistent/basis.txt"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn project_warns_on_reducible_input() {
    let path = temp_file("square.txt", "vars: x,y\n(y-x)^2\n");
    let out = lazval(&["project", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn roots_with_multiplicities() {
    let (v, code) = json(&["roots", "(x+2)*(x^2-2)^2"]);
    assert_eq!(code, 0);
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 3);
    assert_eq!(roots[0]["lower"], "-2");
    assert_eq!(roots[0]["exact"], true);
    assert_eq!(roots[1]["multiplicity"], 2);
    assert_eq!(roots[2]["multiplicity"], 2);

    let (v, _) = json(&["roots", "t^2-2", "--vars", "t", "--width", "1/1000"]);
    let r = &v["roots"][1];
    let lo: f64 = eval_fraction(r["lower"].as_str().unwrap());
    let hi: f64 = eval_fraction(r["upper"].as_str().unwrap());
    assert!(hi - lo <= 1e-3 && lo < 2f64.sqrt() && 2f64.sqrt() < hi);
}

fn eval_fraction(s: &str) -> f64 {
    match s.split_once('/') {
        Some((n, d)) => n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap(),
        None => s.parse().unwrap(),
    }
}

#[test]
fn roots_errors() {
    assert_eq!(
        lazval(&["roots", "x^2-2", "--width", "0"]).status.code(),
        Some(3)
    );
    assert_eq!(
        lazval(&["roots", "x*y", "--vars", "x,y"]).status.code(),
        Some(3)
    );
    assert_eq!(lazval(&["roots", "0"]).status.code(), Some(3));
}

#[test]
fn invariance_verdicts_set_exit_code() {
    let args = [
        "invariance",
        "x^2+y^2-1",
        "--vars",
        "x,y",
        "--at",
        "(3/5,4/5)",
        "--at",
        "(0,1)",
        "--at",
        "(-4/5,3/5)",
    ];
    let (v, code) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "constant");

    let (v, code) = json(&[
        "invariance",
        "x^2+y^2-1",
        "--vars",
        "x,y",
        "--at",
        "(0,1)",
        "--at",
        "(1,0)",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "non_constant");
    assert_eq!(v["witness_index"], 1);

    let (_, code) = json(&[
        "invariance",
        "x^2+y^2-1",
        "--vars",
        "x,y",
        "--property",
        "order",
        "--at",
        "(0,1)",
        "--at",
        "(1,0)",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn invariance_from_samples_file() {
    let path = temp_file(
        "arc.txt",
        "# points on the circle\n(3/5, 4/5)\n(5/13, 12/13)\n",
    );
    let out = lazval(&[
        "invariance",
        "x^2+y^2-1",
        "--vars",
        "x,y",
        "--samples-file",
        path.to_str().unwrap(),
        "--at",
        "(0,1)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 4);

    assert_eq!(
        lazval(&["invariance", "x", "--vars", "x"]).status.code(),
        Some(2)
    );
}

#[test]
fn delineability_property() {
    let (v, code) = json(&[
        "invariance",
        "x^2+y^2-1",
        "--vars",
        "x,y",
        "--property",
        "delineability",
        "--at",
        "(0)",
        "--at",
        "(1/2)",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["root_counts"], serde_json::json!([2, 2]));

    let (_, code) = json(&[
        "invariance",
        "x^2+y^2-1",
        "--vars",
        "x,y",
        "--property",
        "delineability",
        "--at",
        "(0)",
        "--at",
        "(1)",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn stack_over_quarter_circle() {
    let path = temp_file("stack_basis.txt", "vars: x,y,z\nx^2+y^2+z^2-1\nz-x*y\n");
    let p = path.to_str().unwrap();
    let (v, code) = json(&["stack", p, "--at", "(3/5,4/5)", "--at", "(5/13,12/13)"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["columns"].as_array().unwrap().len(), 2);

    let (v, code) = json(&["stack", p, "--at", "(3/5,4/5)", "--at", "(0,0)"]);
    assert_eq!(code, 1);
    assert_eq!(v["ok"], false);
}

#[test]
fn check_suite() {
    let (v, code) = json(&["check", "axioms", "--seed", "7", "--count", "20"]);
    assert_eq!(code, 0);
    assert_eq!(v["trials"], 20);
    assert_eq!(v["failed"], 0);

    let a = lazval(&["check", "roots", "--seed", "3", "--count", "10"]);
    let b = lazval(&["check", "roots", "--seed", "3", "--count", "10"]);
    assert_eq!(a.stdout, b.stdout);

    let (v, code) = json(&["check", "no-such-suite"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "usage");
}

#[test]
fn demos() {
    let out = lazval(&["demo", "circle"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).contains("FAIL"));
    assert_eq!(lazval(&["demo", "unknown"]).status.code(), Some(2));
}

#[test]
fn input_errors() {
    assert_eq!(
        lazval(&["val", "x+", "--vars", "x", "--at", "(0)"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        lazval(&["val", "x", "--vars", "x", "--at", "(0,1)"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        lazval(&["val", "x*q", "--vars", "x", "--at", "(0)"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(lazval(&["frobnicate"]).status.code(), Some(2));
}
