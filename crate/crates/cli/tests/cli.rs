use std::path::Path;

use assert_cmd::Command;
use serde_json::Value;

fn bin() -> Command {
    Command::cargo_bin("freecurve").unwrap()
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = bin().args(args).arg("--json").output().unwrap();
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn validate(schema: &str, v: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(schema);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn analyze_thm_quintic() {
    let (code, v) = run_json(&["analyze", "--poly", "(y*z+x^2)^2*y - x^5"]);
    assert_eq!(code, 0);
    validate("analyze.schema.json", &v);
    let f = &v["freeness"];
    assert_eq!(f["free"], true);
    assert_eq!((f["d1"].as_i64(), f["d2"].as_i64(), f["tau"].as_i64()), (Some(2), Some(2), Some(12)));
    assert_eq!(f["criteria"]["balance"], true);
    assert_eq!(f["criteria"]["midpoint"], true);
}

#[test]
fn analyze_family_sextic() {
    let (code, v) = run_json(&["analyze", "--family", "prop2i", "--d", "6", "--saturation", "both"]);
    assert_eq!(code, 0);
    validate("analyze.schema.json", &v);
    assert_eq!(v["freeness"]["free"], true);
    assert_eq!(v["freeness"]["tau"], 19);
    assert_eq!(v["freeness"]["cuspidal_consistent"], true);
    let defects = v["freeness"]["defects"].as_array().unwrap();
    assert!(defects.iter().all(|d| d["n"] == 0 && d["method"] != "disagree"));
}

#[test]
fn analyze_exact_field() {
    let (code, v) = run_json(&["analyze", "--poly", "y^2*z - x^3", "--field", "qq", "--saturation", "direct"]);
    assert_eq!(code, 0);
    validate("analyze.schema.json", &v);
    assert_eq!(v["freeness"]["free"], false);
    let n: Vec<i64> = v["freeness"]["defects"].as_array().unwrap().iter().map(|d| d["n"].as_i64().unwrap()).collect();
    assert_eq!(n, vec![0, 1, 1, 0]);
}

#[test]
fn analyze_affine_degree() {
    let (code, v) = run_json(&["analyze", "--poly", "y^2 - x^3", "--affine-degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["d"], 3);
    assert_eq!(v["profile"]["tau"], 2);
}

#[test]
fn input_errors_exit_one() {
    let out = bin().args(["analyze", "--poly", "x^2+y"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not homogeneous"));
    let out = bin().args(["analyze", "--poly", "x^2+*y"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 4"));
    let out = bin().args(["families", "gen", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("known families"));
    let out = bin().args(["verify-paper", "--suite", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_suite_json() {
    let (code, v) = run_json(&["verify-paper", "--suite", "arrangements", "--suite", "thm2ii"]);
    assert_eq!(code, 0);
    validate("verify.schema.json", &v);
    assert_eq!(v["summary"]["fail"], 0);
    let claims = v["claims"].as_array().unwrap();
    assert!(claims.iter().any(|c| c["id"] == "arrangements/arrangement:which=d9/tau" && c["computed"] == "49"));
}

#[test]
fn verify_is_deterministic() {
    let a = run_json(&["verify-paper", "--suite", "syzygies", "--seed", "7"]).1;
    let b = run_json(&["verify-paper", "--suite", "syzygies", "--seed", "7"]).1;
    let strip = |v: &Value| -> Vec<(Value, Value)> {
        v["claims"].as_array().unwrap().iter().map(|c| (c["id"].clone(), c["computed"].clone())).collect()
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn syzygies_examples() {
    let (code, v) = run_json(&["syzygies", "--family", "thm2ii", "--k", "3", "--degree", "3"]);
    assert_eq!(code, 0);
    validate("syzygies.schema.json", &v);
    assert_eq!(v["dimension"], 2);
    let (_, v) = run_json(&["syzygies", "--family", "stfam", "--d", "7", "--degree", "2"]);
    assert_eq!(v["dimension"], 1);
    let (_, v) = run_json(&["syzygies", "--family", "fermat", "--d", "5", "--degree", "3"]);
    assert_eq!(v["dimension"], 0);
}

#[test]
fn families_list_and_gen() {
    let (code, v) = run_json(&["families", "list"]);
    assert_eq!(code, 0);
    assert!(v.as_array().unwrap().len() >= 10);
    let dir = std::env::temp_dir().join(format!("freecurve-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("c13.txt");
    bin().args(["families", "gen", "prop4ii", "--k", "1", "--out"]).arg(&out).assert().success();
    let text = std::fs::read_to_string(&out).unwrap();
    let meta: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("c13.txt.json")).unwrap()).unwrap();
    assert_eq!(meta["d"], 13);
    assert_eq!(meta["f"].as_str().unwrap(), text.trim());
    let quintic = bin().args(["families", "gen", "prop3", "--a", "2", "--b", "1"]).output().unwrap();
    let s = String::from_utf8(quintic.stdout).unwrap();
    assert!(s.contains('/'), "{s}");
    let (_, v) = run_json(&["families", "gen", "prop3", "--a", "2", "--b", "1"]);
    assert_eq!(v["d"], 5);
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("fc-out-{}.json", std::process::id()));
    let out = bin().args(["analyze", "--poly", "x^4+y^4+z^4", "--json", "--out"]).arg(&path).output().unwrap();
    assert!(out.status.success());
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let stdout: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(file, stdout);
    assert_eq!(file["profile"]["tau"], 0);
}
