use std::process::Command;

use serde_json::Value;
use toricsing::cli::{run, CliOutput};
use toricsing::exactalg::{parse_poly_auto, parse_rational};

fn cli(args: &[&str]) -> CliOutput {
    run(std::iter::once("toricsing").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let out = cli(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    serde_json::from_str(&ok(&full)).unwrap()
}

#[test]
fn golden_plain_outputs() {
    assert_eq!(
        ok(&["count", "foliation", "--model", "blowup_point:2", "--symbolic"]),
        "result = d1^2 - d2^2 + 3*d1 + d2 + 4\n"
    );
    assert_eq!(
        ok(&["count", "foliation", "--model", "blowup_two_points_p3", "--symbolic", "d0,d1,d2"]),
        "result = d0^3 + d1^3 + d2^3 + 4*d0^2 - 2*d1^2 - 2*d2^2 + 6*d0 + 8\n"
    );
    let wci = ok(&["count", "wci", "--weights", "1,1,1,4", "--ci", "1", "--degree", "8", "--kind", "distribution"]);
    assert!(wci.starts_with("result = 25/4\n"), "{wci}");
    let res = ok(&["residue", "--vars", "z1,z2", "--components", "3*z1^2,3*z2^2", "--group", "3"]);
    assert!(res.starts_with("result = 4/3\n"), "{res}");
    assert!(res.contains("multiplicity = 4\n"), "{res}");
    assert_eq!(ok(&["euler", "ambient", "--model", "blowup_line_p3"]), "result = 6\n");
    assert_eq!(
        ok(&["multidegree", "--model", "multiprojective:1,1", "--ci", "2,3", "--index", "0"]),
        "result = 3\n"
    );
}

#[test]
fn search_lines() {
    let out = ok(&["search", "--family", "p1111k", "--bound", "3"]);
    assert_eq!(
        out,
        "result = 4\n\
         solutions = (a=1, d=2, k=1) accepted\n\
         solutions = (a=2, d=1, k=1) excluded-by-cohomology\n\
         solutions = (a=2, d=2, k=2) accepted\n\
         solutions = (a=3, d=2, k=3) accepted\n"
    );
    let v = json(&["search", "--family", "scroll", "--a", "1,1,1", "--bound", "10"]);
    assert_eq!(v["result"], "1");
}

#[test]
fn json_shape_and_round_trip() {
    let v = json(&["count", "wci", "--weights", "1,1,1,1,1,1,5", "--ci", "1,1,5", "--degree", "2", "--kind", "distribution"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["details", "inputs", "operation", "result"]);
    assert_eq!(v["operation"], "count wci");
    assert_eq!(v["details"]["terms"], serde_json::json!(["8", "-16", "12", "-4"]));

    let v = json(&["count", "wci", "--weights", "1,1,1,4", "--ci", "1", "--degree", "8", "--kind", "distribution"]);
    let r = parse_rational(v["result"].as_str().unwrap()).unwrap();
    assert_eq!(r.to_string(), "25/4");

    let v = json(&["count", "foliation", "--model", "blowup_point:2", "--symbolic"]);
    let text = v["result"].as_str().unwrap();
    assert_eq!(parse_poly_auto(text).unwrap().canonical_string(), text);
}

#[test]
fn determinism() {
    let args = ["count", "ci", "--model", "blowup_line_p3", "--ci", "1,0", "--symbolic", "--json"];
    let first = cli(&args);
    for _ in 0..3 {
        let again = cli(&args);
        assert_eq!((again.code, &again.stdout, &again.stderr), (first.code, &first.stdout, &first.stderr));
    }
}

#[test]
fn exit_codes() {
    let usage = cli(&["count", "foliation"]);
    assert_eq!(usage.code, 2);
    assert!(usage.stderr.contains("--model"), "{}", usage.stderr);
    let bad_flag = cli(&["count", "wci", "--weights", "1,1,1", "--bogus"]);
    assert_eq!(bad_flag.code, 2);
    assert!(bad_flag.stderr.contains("--bogus"));
    let bad_model = cli(&["count", "foliation", "--model", "nope"]);
    assert_eq!(bad_model.code, 2);

    let domain = cli(&["alpha", "--weights", "1,1,1", "--ci", ""]);
    assert_eq!(domain.code, 1, "{}", domain.stderr);
    let domain = cli(&["gcd-obstruction", "--model", "weighted:1,1,2", "--coeffs", "1,1,1"]);
    assert_eq!(domain.code, 1, "{}", domain.stderr);
    assert!(domain.stdout.is_empty());
}

#[test]
fn model_file_matches_builtin() {
    let text = ok(&["catalog", "show", "--model", "blowup_point:2"]);
    let path = std::env::temp_dir().join(format!("toricsing-cli-{}.model", std::process::id()));
    std::fs::write(&path, text).unwrap();
    let from_file = ok(&["count", "foliation", "--model-file", path.to_str().unwrap(), "--symbolic"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(from_file, "result = d1^2 - d2^2 + 3*d1 + d2 + 4\n");
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_toricsing");
    let out = Command::new(bin).args(["euler", "ambient", "--model", "projective:4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "result = 5\n");
    let out = Command::new(bin).args(["count"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).args(["alpha", "--weights", "1,1,1", "--ci", ""]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
