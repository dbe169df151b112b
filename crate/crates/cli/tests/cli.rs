use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn superalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superalg")).args(args).env("NO_COLOR", "1").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn verify_top_coefficients() {
    let o = superalg(&["verify", "example-2-6", "--L", "10", "--max-n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("coeff(x^3, b1..b6) = 6"));
}

#[test]
fn verify_landi_reports_zero_residual() {
    let o = superalg(&["verify", "landi", "--n", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let clause = v["clauses"].as_array().unwrap().iter().find(|c| c["name"] == "n=1: p^2 = p").unwrap();
    assert_eq!(clause["witness"], "0");
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_sphere_projector_n4() {
    let o = superalg(&["verify", "sphere-projector", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn json_reports_are_deterministic() {
    let run = |extra: &[&str]| {
        let mut args = vec!["verify", "grassmann-laws", "--L", "4", "--samples", "20", "--seed", "11", "--format", "json"];
        args.extend_from_slice(extra);
        let mut v: Value = serde_json::from_slice(&superalg(&args).stdout).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let a = run(&[]);
    assert_eq!(a, run(&[]));
    assert_eq!(a, run(&["--sequential"]));
    assert_eq!(a["seed"], 11);
}

#[test]
fn eval_examples() {
    for (expr, ring, expected) in [
        ("(1+b1)*(1-b1)", "grassmann2", "1"),
        ("x0^2+x1^2", "lambda1", "1"),
        ("xi1*xi2 + xi2*xi1", "z6xi2", "0"),
    ] {
        let o = superalg(&["eval", expr, "--ring", ring]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), expected, "{expr}");
    }
}

#[test]
fn eval_with_ring_file() {
    let path = tmp("ring.json");
    std::fs::write(&path, r#"{"kind":"grassmann","generators":3,"base":"rational"}"#).unwrap();
    let o = superalg(&["eval", "b3*b1 + b1*b3 + 1/2", "--ring", path.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "1/2", "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn eval_errors_exit_2_with_position() {
    let o = superalg(&["eval", "b1 + b3", "--ring", "grassmann2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 5"));
    let o = superalg(&["eval", "b1 + * b2", "--ring", "grassmann2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(superalg(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(superalg(&["verify"]).status.code(), Some(2));
    assert_eq!(superalg(&["certify", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn certify_round_trip_and_failures() {
    let exported = superalg(&["export", "sphere-projector", "--n", "1"]);
    let path = tmp("g.json");
    std::fs::write(&path, &exported.stdout).unwrap();
    let o = superalg(&["certify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let identity = r#"{"ring":"z6xi2","source":{"p":1,"q":1},"target":{"p":1,"q":1},"matrix":[["1","0"],["0","1"]]}"#;
    let path = tmp("id.json");
    std::fs::write(&path, identity).unwrap();
    assert_eq!(superalg(&["certify", path.to_str().unwrap()]).status.code(), Some(0));

    let doubled = identity.replace("[\"1\",\"0\"]", "[\"2\",\"0\"]");
    let path = tmp("two.json");
    std::fs::write(&path, doubled).unwrap();
    let o = superalg(&["certify", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let clause = v["clauses"].as_array().unwrap().iter().find(|c| c["name"] == "g^2 = g").unwrap();
    assert_eq!(clause["witness"], "(0,0): 2");

    let rect = r#"{"ring":"z6xi2","source":{"p":1,"q":1},"target":{"p":1,"q":0},"matrix":[["1","0"]]}"#;
    let path = tmp("rect.json");
    std::fs::write(&path, rect).unwrap();
    assert_eq!(superalg(&["certify", path.to_str().unwrap()]).status.code(), Some(2));
}
