use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kernelflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kernelflow"))
        .args(args)
        .env_remove("KERNELFLOW_ORDER")
        .output()
        .expect("spawn kernelflow")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn schema() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(kernelflow::report::SCHEMA).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(report: &Value) {
    let validator = schema();
    let errors: Vec<String> = validator.iter_errors(report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn classify_regular_catalog_member() {
    let out = kernelflow(&["classify", "--form", "0,1", "--f", "y + x*y - x^3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_valid(&r);
    assert_eq!(r["normal_form"]["class"], "RegularCurve");
    assert_eq!(r["normal_form"]["k"], 2);
    assert_eq!(r["normal_form"]["codim"], 2);
    assert_eq!(r["codim"]["cobasis"], serde_json::json!([[0, 0], [1, 0]]));
}

#[test]
fn closed_form_input() {
    let g = "x^3/3 - x^2/2 + y^2/2";
    let out = kernelflow(&["classify", "--dg", g, "--f", "exp(x^2)"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_valid(&r);
    assert_eq!(r["normal_form"]["class"], "Regular");
    assert_eq!(r["normal_form"]["codim"], 0);
    assert_eq!(r["input"]["dg"], g);

    let r = json_of(&kernelflow(&["classify", "--dg", g, "--f", "x + y"]));
    assert_eq!(r["normal_form"]["codim"], 2);
}

#[test]
fn unfold_emits_a_transversal_family() {
    let out = kernelflow(&["unfold", "--form", "0,x", "--f", "x - y^2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_valid(&r);
    assert_eq!(r["transversal"], true);
    assert_eq!(r["family"]["parameters"], serde_json::json!(["c0", "c1"]));
}

#[test]
fn unstable_input_exits_three() {
    let out = kernelflow(&["classify", "--form", "x,-y", "--f", "x + y"]);
    assert_eq!(out.status.code(), Some(3));
    let r = json_of(&out);
    assert_valid(&r);
    assert!(r["normal_form"]["codim"].is_null());
    assert_eq!(r["normal_form"]["class"], "NotInCatalog");
}

#[test]
fn bad_input_exits_two() {
    for args in [
        &["classify", "--form", "0,1", "--f", "x +"][..],
        &["classify", "--form", "0", "--f", "x"],
        &["classify", "--f", "x"],
        &["classify", "--form", "0,1", "--f", "x", "--order", "1"],
        &["portrait", "--form", "0,1", "--f", "y - x^2", "--window", "0"],
        &["nonsense"],
    ] {
        let out = kernelflow(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn order_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_kernelflow"))
        .args(["classify", "--form", "0,1", "--f", "y - x^3"])
        .env("KERNELFLOW_ORDER", "7")
        .output()
        .unwrap();
    let r = json_of(&out);
    assert_eq!(r["input"]["order"], 7);
    assert_eq!(r["normal_form"]["valid_at_order"], 7);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["unfold", "--form", "0,1+x", "--f", "x^2 - y^4 + x*y^3"];
    assert_eq!(kernelflow(&args).stdout, kernelflow(&args).stdout);
}

fn portrait_into(dir: &Path, extra: &[&str]) -> Value {
    let out_dir = dir.to_str().unwrap();
    let mut args = vec!["portrait", "--out", out_dir, "--seeds", "4", "--max-steps", "800"];
    args.extend_from_slice(extra);
    let out = kernelflow(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    json_of(&out)
}

#[test]
fn portraits_are_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let extra = ["--form", "0,x", "--f", "x + y", "--window", "0.25", "--c=-0.3", "--c", "0", "--c", "0.3"];
    let ra = portrait_into(a.path(), &extra);
    portrait_into(b.path(), &extra);
    let counts: Vec<u64> = ra["panels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["equilibrium_components"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, [2, 1, 2]);
    for name in ["panel_0.svg", "panel_1.svg", "panel_2.csv"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, y, "{name} differs between runs");
    }
    let csv = std::fs::read_to_string(a.path().join("panel_0.csv")).unwrap();
    assert!(csv.starts_with("trajectory,t,x,y\n"));
}

#[test]
fn portrait_from_saved_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = kernelflow(&["unfold", "--form", "x,y", "--f", "x"]);
    assert_eq!(report.status.code(), Some(0));
    let path = dir.path().join("report.json");
    std::fs::write(&path, &report.stdout).unwrap();

    let saved = json_of(&report)["family"].clone();
    let r = portrait_into(dir.path(), &["--family-from", path.to_str().unwrap(), "--c", "0.1"]);
    assert_eq!(r["family"], saved);
    assert!(dir.path().join("panel_0.svg").exists());
}

#[test]
fn verify_lists_and_runs() {
    let out = kernelflow(&["verify", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    let names = String::from_utf8(out.stdout).unwrap();
    assert!(names.lines().any(|l| l == "conformal.round_trip"));

    let out = kernelflow(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn verify_catches_a_flipped_convention() {
    let out = kernelflow(&["verify", "--flip-convention"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL  conformal.round_trip"));
}
