use std::process::{Command, Output};

use serde_json::{json, Value};

fn flagzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagzeta"))
        .args(args)
        .env_remove("FLAGZETA_WORKCAP")
        .output()
        .unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = flagzeta(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    flagzeta(args).status.code()
}

#[test]
fn predict_sl2() {
    let v = ok_json(&["predict", "--group", "A1", "--q", "2"]);
    assert_eq!(v["theta_star"], json!({"coeff": "3/4", "logq_pow": -1}));
    assert_eq!(v["lhs"], v["theta_star"]);
    assert_eq!(v["identity_holds"], json!(true));
}

#[test]
fn predict_p2_with_truncation() {
    let v = ok_json(&[
        "predict",
        "--group",
        "A2",
        "--parabolic",
        "2",
        "--q",
        "3",
        "--truncate",
        "6",
    ]);
    assert_eq!(v["alpha_star"], json!("1/3"));
    assert_eq!(v["parabolic"], json!([2]));
    assert!(v["truncated_tau"]["coeff"].as_f64().unwrap() > 0.0);
}

#[test]
fn alpha_of_full_flag() {
    let v = ok_json(&["alpha", "--group", "A2"]);
    assert_eq!(v["t"], json!(2));
    assert_eq!(v["alpha_star"], v["alpha_from_lq"]);
}

#[test]
fn cfunction_along_a_word() {
    let v = ok_json(&["cfunction", "--group", "A1", "--word", "1"]);
    assert_eq!(v["word"], json!([1]));
    let c = ok_json(&["cfunction", "--group", "A2", "--subset", "1,2"]);
    assert_eq!(c["subset"], json!([1, 2]));
}

#[test]
fn zeta_of_an_elliptic_curve() {
    let v = ok_json(&[
        "zeta-curve",
        "--q",
        "3",
        "--genus",
        "1",
        "--zeta-numerator",
        "1,1,3",
        "--places",
        "2",
    ]);
    assert_eq!(v["class_number"], json!(5));
    assert_eq!(v["places"], json!([5, 5]));
}

#[test]
fn count_as_csv() {
    let out = flagzeta(&[
        "count",
        "--variety",
        "P1",
        "--max-degree",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "d1,count\n0,3\n1,6\n2,24\n"
    );
}

#[test]
fn count_as_json() {
    let v = ok_json(&["count", "--variety", "FL3", "--max-degree", "1"]);
    assert_eq!(v["variety"], json!("FL3"));
    assert_eq!(v["total_degree"], json!(1));
    let rows = v["counts"].as_array().unwrap();
    assert_eq!(rows[0], json!({"degrees": [0, 0], "count": 21}));
    assert!(rows
        .iter()
        .all(|r| r["degrees"].as_array().unwrap().len() == 2));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let a = flagzeta(&[
        "verify",
        "--variety",
        "P2",
        "--max-degree",
        "4",
        "--jobs",
        "1",
    ]);
    let b = flagzeta(&[
        "verify",
        "--variety",
        "P2",
        "--max-degree",
        "4",
        "--jobs",
        "3",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], json!(true));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&["predict", "--group", "Z9"]), Some(2));
    assert_eq!(
        code(&["predict", "--group", "A2", "--parabolic", "1,2"]),
        Some(2)
    );
    assert_eq!(
        code(&["predict", "--group", "A2", "--parabolic", "3"]),
        Some(2)
    );
    assert_eq!(
        code(&["count", "--variety", "P7", "--max-degree", "2"]),
        Some(2)
    );
    assert_eq!(
        code(&["predict", "--group", "A1", "--format", "csv"]),
        Some(2)
    );
    assert_eq!(
        code(&["count", "--variety", "P1", "--max-degree", "2", "--q", "6"]),
        Some(2)
    );
    assert_eq!(
        code(&["zeta-curve", "--genus", "1", "--zeta-numerator", "1,0,5"]),
        Some(2)
    );
    assert_eq!(code(&["predict"]), Some(2));
}

#[test]
fn work_cap_exits_with_two() {
    assert_eq!(
        code(&["count", "--variety", "P2", "--max-degree", "40"]),
        Some(2)
    );
    let capped = Command::new(env!("CARGO_BIN_EXE_flagzeta"))
        .args(["count", "--variety", "P2", "--max-degree", "4"])
        .env("FLAGZETA_WORKCAP", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("work cap"));
}

#[test]
fn too_few_degrees_fail_verification_with_one() {
    assert_eq!(
        code(&["verify", "--variety", "FL3", "--max-degree", "2"]),
        Some(1)
    );
}
