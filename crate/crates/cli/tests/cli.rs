use std::path::PathBuf;
use std::process::{Command, Output};

fn lintrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lintrace")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel).display().to_string()
}

#[test]
fn pushout_coefficients_from_file() {
    let o = lintrace(&["--format", "json", "coeffs", "--method", "hofin", &data("categories/pushout.json")]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"a": "-1", "b": "1", "c": "1"}));
}

#[test]
fn group_coefficients_by_bundled_name() {
    let o = lintrace(&["--format", "json", "coeffs", "--method", "group", "BS3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"e": "1/6", "(12)": "1/2", "(012)": "1/3"}));
}

#[test]
fn incompatible_method_is_an_input_error() {
    let o = lintrace(&["coeffs", "--method", "hofin", "BS3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = lintrace(&["validate", "no_such_category"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn trace_matches_formula_on_bundled_diagrams() {
    for (cat, diagram) in [("pushout", "pushout-sample"), ("BS3", "BS3-sample"), ("OS3", "OS3-sample")] {
        let o = lintrace(&["--format", "json", "trace", cat, diagram]);
        assert!(o.status.success(), "{cat}: {}", String::from_utf8_lossy(&o.stderr));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["equal"], true);
        assert_eq!(v["lefschetz"], v["formula"]);
    }
    let o = lintrace(&["bicat-trace", "free_idempotent", "free_idempotent-sample"]);
    assert!(o.status.success());
}

#[test]
fn verify_is_byte_deterministic() {
    let a = lintrace(&["verify", "--suite", "realiz", "--seed", "7"]);
    let b = lintrace(&["verify", "--suite", "realiz", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("realization n=5"));
}

#[test]
fn generated_diagram_feeds_back_into_trace() {
    let dir = std::env::temp_dir().join(format!("lintrace-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d.json");
    let o = lintrace(&["gen", "--family", "diagram", "--category", "OC4", "--seed", "5"]);
    assert!(o.status.success());
    std::fs::write(&path, &o.stdout).unwrap();
    let t = lintrace(&["trace", "OC4", path.to_str().unwrap()]);
    assert!(t.status.success(), "{}", String::from_utf8_lossy(&t.stderr));
    let _ = std::fs::remove_dir_all(&dir);
}
