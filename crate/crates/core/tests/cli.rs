use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_stretchforge"));
    c.env_remove("STRETCHFORGE_ORDER");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../schema/report.schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn report(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    if let Err(e) = schema().validate(&v) {
        panic!("report violates schema: {e}\n{v:#}");
    }
    v
}

fn check<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check named {name}"))
}

fn all_pass(v: &Value) -> bool {
    v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass")
}

#[test]
fn stretch_passes_and_validates() {
    let out = run(&["stretch", "-n", "3", "-p", "2", "--order", "8"]);
    assert!(out.status.success());
    let v = report(&out);
    assert_eq!(v["command"], "stretch");
    assert_eq!(v["inputs"]["order"], 8);
    assert!(all_pass(&v));
}

#[test]
fn stretch_with_p1_is_trivial() {
    let out = run(&["stretch", "-n", "3", "-p", "1"]);
    assert!(out.status.success());
    let v = report(&out);
    assert_eq!(check(&v, "numeric_cross_validation")["details"]["max_deviation"], 0.0);
}

#[test]
fn stretch_rejects_low_order() {
    let out = run(&["stretch", "--order", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("order"));
}

#[test]
fn reports_are_deterministic() {
    let a = run(&["stretch", "-n", "2", "-p", "3", "--seed", "7"]);
    let b = run(&["stretch", "-n", "2", "-p", "3", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn klein_poincare_reports_valuation_two() {
    for n in ["2", "3", "4"] {
        let out = run(&["klein-poincare", "-n", n]);
        assert!(out.status.success());
        let v = report(&out);
        let d = &check(&v, "germ_valuation")["details"];
        assert_eq!(d["valuation"], 2);
        assert_eq!(d["leading_coefficient"], "1/2");
        assert!(all_pass(&v));
    }
    let out = run(&["klein-poincare", "-n", "4", "--order", "6"]);
    assert!(out.status.success());
    let out = run(&["klein-poincare", "--order", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn order_from_environment() {
    let out = bin()
        .env("STRETCHFORGE_ORDER", "6")
        .args(["klein-poincare"])
        .output()
        .unwrap();
    assert_eq!(report(&out)["inputs"]["order"], 6);
}

#[test]
fn condition_a_builtins() {
    for args in [
        vec!["condition-a", "so(1,3)", "so(3)"],
        vec!["condition-a", "se(2)", "so(2)"],
        vec!["condition-a", "abelian(4)", "zero"],
        vec!["condition-a", "su(1,2)"],
        vec!["condition-a", "so(1,2)*so(3)", "so(2)*so(3)"],
    ] {
        let out = run(&args);
        assert!(out.status.success(), "{args:?}");
        let v = report(&out);
        assert_eq!(check(&v, "condition_A_proxy")["status"], "pass");
    }
    let out = run(&["condition-a", "sl(2)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn condition_a_failure_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("nil.json");
    // boost + rotation in so(1,2): a nilpotent line
    std::fs::write(&sub, r#"{"span": [["1", "0", "1"]]}"#).unwrap();
    let out = run(&["condition-a", "so(1,2)", sub.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = report(&out);
    assert_eq!(check(&v, "condition_A_proxy")["status"], "fail");
    assert_eq!(check(&v, "condition_A_proxy")["details"]["normalizer_dim"], 2);
}

#[test]
fn condition_a_from_json_files() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("so3.json");
    std::fs::write(
        &alg,
        r#"{"name": "so(3) by hand", "matrix_dim": 3, "basis": [
            ["0","1","0", "-1","0","0", "0","0","0"],
            ["0","0","1", "0","0","0", "-1","0","0"],
            ["0","0","0", "0","0","1", "0","-1","0"]]}"#,
    )
    .unwrap();
    let out = run(&["condition-a", alg.to_str().unwrap(), "all"]);
    assert!(out.status.success());
    let v = report(&out);
    assert_eq!(check(&v, "condition_A_proxy")["details"]["normalizer_dim"], 3);
}

#[test]
fn poset_subcommands() {
    let v = report(&run(&["poset", "check", "4", "2"]));
    assert_eq!(check(&v, "is_tighter")["details"]["tighter"], true);
    let v = report(&run(&["poset", "check", "2", "3"]));
    assert_eq!(check(&v, "is_tighter")["details"]["tighter"], false);
    let v = report(&run(&["poset", "certify", "2", "3", "--condition-a"]));
    assert_eq!(check(&v, "certificate")["details"]["kind"], "NonConjugate");
    let out = run(&["poset", "certify", "2", "3"]);
    assert!(out.status.success());
    let v = report(&out);
    assert_eq!(check(&v, "certificate")["status"], "inconclusive");
    let v = report(&run(&["poset", "tightest", "1..12"]));
    assert_eq!(check(&v, "tightest")["details"]["tightest"], 1);
    let v = report(&run(&["poset", "tightest", "2,3"]));
    assert!(check(&v, "tightest")["details"]["tightest"].is_null());
    let v = report(&run(&["poset", "enumerate", "10"]));
    assert_eq!(check(&v, "pairwise_nonconjugate")["details"]["pairs"], 45);
    assert!(all_pass(&report(&run(&["poset", "axioms", "60"]))));
}

#[test]
fn eigencheck_cases() {
    for (space, m, plus, minus) in [("complex", "2", 2, 2), ("complex", "3", 2, 4), ("real", "3", 1, 2)] {
        let v = report(&run(&["eigencheck", space, m]));
        let d = &check(&v, "multiplicities")["details"];
        assert_eq!((d["plus"].as_u64().unwrap(), d["minus"].as_u64().unwrap()), (plus, minus));
    }
}

#[test]
fn text_format_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = run(&["--format", "text", "--out", path.to_str().unwrap(), "eigencheck", "real", "4"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("eigencheck"));
    assert!(text.contains("[pass"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["stretch", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["poset", "tightest", "x..y"]).status.code(), Some(2));
}
