use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_padic-voa")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json, stderr)
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn eisenstein_g2() {
    let (code, json, _) = run(&["eisenstein", "--k", "2", "--qmax", "4"]);
    assert_eq!(code, 0);
    assert_eq!(strings(&json["series"]["coeffs"]), ["-1/24", "1", "3", "4", "7"]);
    assert_eq!(json["series"]["offset"], "0");
    assert_eq!(json["series"]["order"], 4);
}

#[test]
fn eisenstein_star_and_stabilized() {
    let (code, json, _) = run(&["eisenstein", "--star", "--prime", "5", "--qmax", "5"]);
    assert_eq!(code, 0);
    assert_eq!(strings(&json["series"]["coeffs"]), ["1", "1", "3", "4", "7", "1"]);
    let (code, json, _) = run(&["eisenstein", "--stabilized", "--prime", "5", "--qmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(strings(&json["series"]["coeffs"]), ["1/6", "1", "3"]);
    let (code, _, _) = run(&["eisenstein", "--star", "--prime", "9"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["eisenstein", "--k", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn character_of_vacuum_and_eta() {
    let (code, json, _) = run(&["character", "--prime", "5", "--state", "vac", "--qmax", "5"]);
    assert_eq!(code, 0);
    assert_eq!(json["series"]["offset"], "-1/24");
    assert_eq!(strings(&json["series"]["coeffs"]), ["1", "1", "2", "3", "5", "7"]);
    let (code, json, _) = run(&["character", "--prime", "5", "--state", "h(-1)^2 vac", "--qmax", "4", "--eta"]);
    assert_eq!(code, 0);
    assert_eq!(json["series"]["offset"], "0");
    assert_eq!(json["normalized"], true);
    // 2 G2 + 1/12
    assert_eq!(strings(&json["series"]["coeffs"]), ["0", "2", "6", "8", "14"]);
}

#[test]
fn character_norms_use_neg_infinity_string() {
    let (code, json, _) = run(&["character", "--state", "h(-1) vac", "--qmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(strings(&json["norm_exponents"]), ["-inf", "-inf", "-inf"]);
}

#[test]
fn parse_errors_exit_two() {
    let (code, json, stderr) = run(&["character", "--state", "h(-1 vac"]);
    assert_eq!(code, 2);
    assert_eq!(json, Value::Null);
    assert!(stderr.contains("offset 5"), "{stderr}");
    let (code, _, stderr) = run(&["character", "--state", "h(1) vac"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("not a creation operator"));
    let (code, _, _) = run(&["axioms", "--suite", "nope"]);
    assert_eq!(code, 2);
}

#[test]
fn kummer_reports_depth_zero_congruence() {
    let (_, json, _) = run(&["kummer", "--prime", "5", "--amax", "1", "--qmax", "10"]);
    let pair = json["congruences"].as_array().unwrap().iter().find(|e| e["a"] == 0 && e["b"] == 1).unwrap().clone();
    assert!(pair["norm_exponent"].as_i64().unwrap() <= -1);
    assert_eq!(pair["ok"], true);
    assert_eq!(pair["r"], 5);
    assert_eq!(pair["s"], 21);
    assert_eq!(json["limits"][0]["coefficient_exponents"].as_array().unwrap().len(), 11);
}

#[test]
fn kummer_exit_code_tracks_contracts() {
    let (code, json, _) = run(&["kummer", "--prime", "7", "--amax", "0", "--qmax", "6"]);
    assert_eq!(json["ok"], code == 0);
    let (code, json, _) = run(&["kummer", "--prime", "3", "--amax", "1", "--qmax", "4"]);
    assert_eq!(json["ok"], false);
    assert_eq!(code, 1);
}

#[test]
fn axioms_jacobi_default_sweep() {
    let (code, json, _) = run(&["axioms", "--suite", "jacobi", "--grade", "3"]);
    assert_eq!(code, 0);
    assert_eq!(json["exceptions"], 0);
    assert_eq!(json["window"], 2);
    assert_eq!(json["checks"], 343 * 125);
}

#[test]
fn axioms_other_suites() {
    for suite in ["commutator", "locality", "isometry"] {
        let (code, json, _) = run(&["axioms", "--suite", suite, "--grade", "2", "--prime", "3"]);
        assert_eq!(code, 0, "{suite}");
        assert_eq!(json["suite"], suite);
        assert_eq!(json["exceptions"], 0);
    }
}

#[test]
fn virasoro_sweep_and_out_file() {
    let dir = std::env::temp_dir().join(format!("padic-voa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("vir.json");
    let (code, json, _) =
        run(&["virasoro", "--cprime", "12", "--grade", "4", "--window", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json["exceptions"], 0);
    assert_eq!(json["integral"], true);
    assert_eq!(json["central_charge"], "24");
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, json);
    let (code, json, _) = run(&["virasoro", "--cprime", "-1/2", "--grade", "3"]);
    assert_eq!(code, 0);
    assert_eq!(json["integral"], Value::Null);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_is_deterministic_with_sorted_keys() {
    let (_, a, _) = run(&["eisenstein", "--k", "4", "--qmax", "6"]);
    let out = Command::new(env!("CARGO_BIN_EXE_padic-voa")).args(["eisenstein", "--k", "4", "--qmax", "6"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), a);
    let keys: Vec<&str> = a.as_object().unwrap().keys().map(String::as_str).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let first = text.find("\"command\"").unwrap();
    let second = text.find("\"prime\"").unwrap();
    assert!(first < second);
}
