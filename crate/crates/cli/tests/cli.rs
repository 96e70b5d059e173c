use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn problem(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("problems").join(name)
}

fn samuel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_samuel")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("samuel-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = samuel(args);
    (code(&out), serde_json::from_slice(&out.stdout).unwrap())
}

#[test]
fn series_json_envelope() {
    let file = problem("ex2_6.ideal");
    let (status, v) = json(&["--json", "series", file.to_str().unwrap()]);
    assert_eq!(status, 0);
    for key in [
        "tool",
        "version",
        "seed",
        "char",
        "input",
        "result",
        "certificates",
        "bounds",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["seed"], "0");
    assert_eq!(v["char"], "32003");
    let strings = |x: &Value| -> Vec<String> {
        x.as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap().to_string())
            .collect()
    };
    assert_eq!(strings(&v["result"]["numerator"]), ["31", "9", "7", "1"]);
    assert_eq!(strings(&v["result"]["coefficients"]), ["48", "26", "10", "1"]);
    assert_eq!(v["result"]["paths_agree"], true);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let file = problem("ex1_9.ideal");
    let path = file.to_str().unwrap();
    for cmd in ["hilbert", "reduction", "depth"] {
        let a = samuel(&["--json", cmd, path]);
        let b = samuel(&["--json", cmd, path]);
        assert_eq!(code(&a), 0, "{cmd}");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        let v: Value = serde_json::from_slice(&a.stdout).unwrap();
        let again = serde_json::to_vec_pretty(&v).unwrap();
        assert_eq!(serde_json::from_slice::<Value>(&again).unwrap(), v);
    }
}

#[test]
fn rationals_and_prime_fields_agree_on_monomial_ideals() {
    let file = problem("m2_xyz.ideal");
    let path = file.to_str().unwrap();
    let (a, p) = json(&["--json", "hilbert", path]);
    let (b, q) = json(&["--json", "--char", "0", "hilbert", path]);
    assert_eq!((a, b), (0, 0));
    assert_eq!(q["char"], "0");
    assert_eq!(p["result"]["coefficients"], q["result"]["coefficients"]);
}

#[test]
fn audits_report_through_the_exit_code() {
    let m2 = problem("m2_xyz.ideal");
    assert_eq!(
        code(&samuel(&["audit", m2.to_str().unwrap(), "--theorem", "ITOH12"])),
        0
    );
    // a false declaration lets a failing conclusion through
    let ex = problem("ex1_7.ideal");
    let out = samuel(&[
        "audit",
        ex.to_str().unwrap(),
        "--theorem",
        "ITOH12",
        "--declare",
        "integrally-closed",
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    let out = samuel(&["audit", ex.to_str().unwrap(), "--theorem", "T9.9"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn missing_file_is_an_input_error() {
    let out = samuel(&["hilbert", "no/such/file.ideal"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("file not found"));
}

#[test]
fn composite_characteristic_is_rejected() {
    let file = problem("ex2_6.ideal");
    assert_eq!(code(&samuel(&["--char", "6", "info", file.to_str().unwrap()])), 2);
    let path = scratch(
        "char6.ideal",
        "[ring]\nvars = x, y\nchar = 6\n[ideal]\ngens = x^2, y^2\n",
    );
    let out = samuel(&["info", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));
}

#[test]
fn syntax_errors_carry_positions() {
    let path = scratch(
        "syntax.ideal",
        "[ring]\nvars = x, y\nchar = 32003\n[ideal]\ngens = x^2, y^^2\n",
    );
    let out = samuel(&["hilbert", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 5"));
}

#[test]
fn non_primary_ideals_are_refused() {
    let path = scratch("line.ideal", "[ring]\nvars = x, y\nchar = 32003\n[ideal]\ngens = x\n");
    let out = samuel(&["hilbert", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("m-primary"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&samuel(&["hilbert"])), 2);
    assert_eq!(code(&samuel(&["frobnicate"])), 2);
}
