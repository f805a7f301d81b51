use std::process::{Command, Output};

use gdtel_cli::problem::{parse_problem, Kind, Mode};
use gdtel_cli::render::parse_op;
use gdtel_core::scalars::ZPoly;
use gdtel_core::telescoper::DiffOp;
use serde_json::Value;

fn gdtel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gdtel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = gdtel(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn coeffs(v: &Value) -> DiffOp {
    let cs = v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| ZPoly::new(c.as_array().unwrap().iter().map(|x| x.to_string().parse().unwrap()).collect()))
        .collect();
    DiffOp::new(cs)
}

#[test]
fn conic_json_schema() {
    let v = json(&["--vars", "t,x", "1/(x^2 - t)"]);
    assert_eq!(v["order"], 1);
    assert_eq!(v["coeffs"].to_string(), "[[1],[0,2]]");
    assert_eq!(v["pipeline"], "regular");
    assert!(v["verified"].is_null());
    assert!(v["timings"]["telescope"].is_number());
}

#[test]
fn printed_operator_reparses() {
    for args in [
        vec!["--vars", "t,x", "1/(x^2 - t)"],
        vec!["--vars", "t,x,y,z", "x*y*z/(x^3 + y^3 + z^3 - 3*t*x*y*z)^2"],
        vec!["--vars", "s,u", "(u + s)/(u^3 - s*u + 1)^2"],
    ] {
        let v = json(&args);
        let param = args[1].split(',').next().unwrap();
        let op = parse_op(v["operator"].as_str().unwrap(), param).unwrap();
        assert_eq!(op, coeffs(&v).normalized());
    }
}

#[test]
fn subcommand_and_default_agree() {
    let a = gdtel(&["--vars", "t,x", "1/(x^2 - t)"]);
    let b = gdtel(&["telescope", "--vars", "t,x", "1/(x^2 - t)"]);
    let strip = |s: String| s.lines().filter(|l| !l.starts_with("time ")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(stdout(&a)), strip(stdout(&b)));
}

#[test]
fn output_is_deterministic_apart_from_timings() {
    let args = ["--vars", "t,x,y,z", "--verify", "--certificate", "x*y*z/(x^3 + y^3 + z^3 - 3*t*x*y*z)^2"];
    let strip = |o: Output| stdout(&o).lines().filter(|l| !l.starts_with("time ")).map(str::to_string).collect::<Vec<_>>();
    let first = strip(gdtel(&args));
    assert!(first.iter().any(|l| l == "verified: true"));
    assert!(first.iter().any(|l| l == "certificate:"));
    assert_eq!(first, strip(gdtel(&args)));
}

#[test]
fn hesse_pencil_verifies() {
    let v = json(&["--vars", "t,x,y,z", "--verify", "x*y*z/(x^3 + y^3 + z^3 - 3*t*x*y*z)^2"]);
    assert_eq!(v["order"], 2);
    assert_eq!(v["verified"], true);
    assert_eq!(v["operator"], "(t^4 - t)*Dt^2 + (5*t^3 + 1)*Dt + (4*t^2)");
}

#[test]
fn affine_input_and_singular_pipeline() {
    // the closure x²y² − t z⁴ is singular at [1:0:0]
    let v = json(&["--vars", "t,x,y", "1/(x^2*y^2 - t)"]);
    assert_eq!(v["pipeline"], "singular");
    assert_eq!(v["operator"], "(2*t)*Dt + (1)");
    // forcing the deformation pipeline on a smooth conic gives the same operator
    let a = json(&["--vars", "t,x", "1/(x^2 - t)"]);
    let b = json(&["--vars", "t,x", "--force-singular", "1/(x^2 - t)"]);
    assert_eq!(b["pipeline"], "singular");
    assert_eq!(coeffs(&a).normalized(), coeffs(&b).normalized());
}

#[test]
fn reduce_and_check_regular() {
    let o = gdtel(&["reduce", "--vars", "t,x0,x1", "--mode", "projective", "1/(x0^2 - t*x1^2)"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("g1 = "));
    let o = gdtel(&["reduce", "--vars", "t,x0,x1", "x0*x1/(x0^2 - t*x1^2)^2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&["check-regular", "--vars", "t,x,y,z", "x^4 + y^4 + z^4 - 4*t*x^2*y*z"]);
    assert_eq!(v["regular"], true);
    assert_eq!(v["dimension"], 6);
    assert_eq!(v["formula"], 6);
    let v = json(&["check-regular", "--vars", "t,x,y,z", "x^2*y + z^3"]);
    assert_eq!(v["regular"], false);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| gdtel(args).status.code().unwrap();
    assert_eq!(code(&["--vars", "t", "1"]), 2);
    assert_eq!(code(&["--vars", "t,x", "--timeout-seconds", "-1", "1/x"]), 2);
    assert_eq!(code(&["--vars", "t,x", "1/(x - y)"]), 3);
    assert_eq!(code(&["--vars", "t,x", "1/(x^2 - t"]), 3);
    assert_eq!(code(&["--vars", "t,x", "x^2 + t"]), 4);
    assert_eq!(code(&["--mode", "projective", "--vars", "t,x0,x1", "1/(x0^3 - t*x1^3)"]), 4);
    assert_eq!(code(&["--mode", "projective", "--vars", "t,x,y", "x^2*y^2/(x^2 - t*y^2)^3"]), 0);
    assert_eq!(code(&["--mode", "projective", "--vars", "t,x,y", "x/(x^2*y)"]), 5);
    assert_eq!(code(&["--vars", "t,x,y,z", "--max-rows", "3", "x*y*z/(x^3 + y^3 + z^3 - 3*t*x*y*z)^2"]), 6);
    assert_eq!(code(&["--vars", "t,x,y,z", "--max-order", "1", "x*y*z/(x^3 + y^3 + z^3 - 3*t*x*y*z)^2"]), 6);
}

#[test]
fn parse_problem_examples() {
    let p = parse_problem("t,x", Mode::Auto, "1/(x^2 - t)", 400).unwrap();
    assert!(matches!(p.kind, Kind::Affine));
    assert_eq!(p.nvars(), 1);
    let p = parse_problem("t,x,y,z", Mode::Auto, "(x - y)/(z^2 - (x^3+t)*(y^3+t))", 400).unwrap();
    assert!(matches!(p.kind, Kind::Affine));
    assert_eq!(p.nvars(), 3);
    let p = parse_problem("t,x0,x1", Mode::Projective, "1/(x0^2 - t*x1^2)", 400).unwrap();
    assert!(matches!(p.kind, Kind::Projective(_)));
    assert_eq!(p.ell, 1);
}

#[test]
fn bench_reports_table_order() {
    let args = ["bench", "--n", "2", "--d", "3", "--ell", "2", "--delta", "1", "--seed", "1"];
    let v = json(&args);
    let inst = &v["instances"][0];
    assert_eq!(inst["order"], 2);
    assert_eq!(inst["dims"].to_string(), "[1,1]");
    // same seed, same instance
    assert_eq!(json(&args)["instances"][0]["degree"], inst["degree"]);
}

#[test]
fn stdin_input() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_gdtel"))
        .args(["--vars", "t,x", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"1/(x^2 - t)\n").unwrap();
    let out = child.wait_with_output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 1);
}
