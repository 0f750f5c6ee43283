use std::path::PathBuf;
use std::process::Command;

use nnreal::cli::run;
use serde_json::Value;

const EX4: &str = r#"[{"re":"6"},{"re":"-2"},{"re":"-1","im":"3","mult":2},{"re":"-1","im":"-3","mult":2}]"#;
const EX4_II: &str = r#"[{"re":"17"},{"re":"-3","im":"9","mult":2},{"re":"-3","im":"-9","mult":2}]"#;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).expect("stdout is JSON")
    }
}

fn nnreal(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("nnreal").chain(args.iter().copied()), &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nnreal-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn check_not_realizable() {
    let o = nnreal(&["check", "--spectrum", EX4_II]);
    assert_eq!(o.code, 1);
    assert_eq!(o.json()["reason"], "NotRealizable: s₁²=25 > n·s₂=5");
    assert_eq!(o.json()["s1"], "5");
    assert_eq!(o.json()["s2"], "1");
    assert!(o.stderr.starts_with("NotRealizable"));
}

#[test]
fn check_realizable() {
    let o = nnreal(&["check", "--spectrum", EX4]);
    assert_eq!(o.code, 0);
    assert_eq!(o.json()["verdict"], "Realizable");
}

#[test]
fn universal_writes_both_certificates() {
    let dir = scratch("universal");
    let o = nnreal(&["universal", "--spectrum", EX4, "--jobs", "2", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.json()["realized"], 2);
    assert_eq!(o.json()["total"], 2);
    for i in 0..2 {
        let path = dir.join(format!("jcf-{i}.json"));
        let v = nnreal(&["verify", "--certificate", path.to_str().unwrap()]);
        assert_eq!(v.code, 0, "{}", v.stdout);
        assert_eq!(v.json()["ok"], true);
    }
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn family_interval_only() {
    let o = nnreal(&["family-negc", "--lambda", "6", "--a", "1", "--b", "3", "--n", "6", "--format", "text"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.trim(), "c ∈ [1, 2]");
    let o = nnreal(&["family-negc", "--params", r#"{"lambda":"17","a":"3","b":"9","n":6}"#]);
    assert_eq!(o.json()["interval"]["lo"], "24/5");
    assert_eq!(o.json()["interval"]["hi"], "5");
}

#[test]
fn family_domain_failures() {
    let o = nnreal(&["family-negc", "--lambda", "3", "--a", "3", "--b", "9", "--n", "6"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.starts_with("C1Violated"));
    let o = nnreal(&["family-negc", "--lambda", "6", "--a", "1", "--b", "3", "--n", "6", "--c", "3"]);
    assert_eq!(o.code, 1);
    let o = nnreal(&["family-negc", "--lambda", "6", "--a", "1", "--b", "3", "--n", "7"]);
    assert_eq!(o.code, 2);
}

#[test]
fn family_member_realized() {
    let o = nnreal(&["family-negc", "--lambda", "6", "--a", "1", "--b", "3", "--n", "6", "--c", "2", "--jcf", "0"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let cert = &o.json()["certificate"];
    assert_eq!(cert["verdicts"]["jcf_match"], true);
    let o = nnreal(&["family-corr", "--a", "1", "--b", "3", "--n", "8", "--c", "1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.json()["params"]["lambda"], "9");
}

#[test]
fn realize_by_index_and_by_json() {
    let by_index = nnreal(&["realize", "--spectrum", EX4, "--jcf", "0"]);
    assert_eq!(by_index.code, 0);
    let j = serde_json::to_string(&by_index.json()["jcf"]).unwrap();
    let by_json = nnreal(&["realize", "--spectrum", EX4, "--jcf", &j]);
    assert_eq!(by_json.stdout, by_index.stdout);
}

#[test]
fn deterministic_output() {
    let dir_a = scratch("det-a");
    let dir_b = scratch("det-b");
    for dir in [&dir_a, &dir_b] {
        assert_eq!(nnreal(&["realize", "--spectrum", EX4, "--jcf", "1", "--out", dir.to_str().unwrap()]).code, 0);
    }
    let a = std::fs::read(dir_a.join("certificate.json")).unwrap();
    let b = std::fs::read(dir_b.join("certificate.json")).unwrap();
    assert_eq!(a, b);
    let _ = std::fs::remove_dir_all(&dir_a);
    let _ = std::fs::remove_dir_all(&dir_b);
}

#[test]
fn verify_matrix_with_claims() {
    let dir = scratch("claims");
    std::fs::create_dir_all(&dir).unwrap();
    let m = dir.join("m.json");
    let claims = dir.join("claims.json");
    std::fs::write(&m, r#"[["0","2"],["1","1"]]"#).unwrap();
    std::fs::write(&claims, r#"{"spectrum":[{"re":"2"},{"re":"-1"}]}"#).unwrap();
    let o = nnreal(&["verify", "--matrix", m.to_str().unwrap(), "--claims", claims.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    std::fs::write(&claims, r#"{"spectrum":[{"re":"3"},{"re":"-2"}]}"#).unwrap();
    let o = nnreal(&["verify", "--matrix", m.to_str().unwrap(), "--claims", claims.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.starts_with("VerificationFailed"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn merge_small_spectra() {
    let o = nnreal(&[
        "merge",
        "--spectrum-a",
        r#"[{"re":"2"},{"re":"-1"}]"#,
        "--spectrum-b",
        r#"[{"re":"3"},{"re":"-1"}]"#,
        "--matrix-a",
        r#"[[0,2],[1,1]]"#,
        "--matrix-b",
        r#"[[1,2],[2,1]]"#,
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.json()["matrix"][2], serde_json::json!(["1", "3", "1"]));
}

#[test]
fn input_errors() {
    assert_eq!(nnreal(&["realize", "--spectrum", "missing.json"]).code, 2);
    assert_eq!(nnreal(&["realize", "--spectrum", "[1,"]).code, 2);
    assert_eq!(nnreal(&["realize", "--spectrum", EX4, "--jcf", "9"]).code, 2);
    assert_eq!(nnreal(&["realize", "--spectrum", r#"[{"re":"1","im":"1"}]"#]).code, 2);
    assert_eq!(nnreal(&["frobnicate"]).code, 2);
    let o = nnreal(&["realize"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("--spectrum"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_nnreal");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["check", "--spectrum", EX4]), Some(0));
    assert_eq!(status(&["check", "--spectrum", EX4_II]), Some(1));
    assert_eq!(status(&["check", "--spectrum", "{"]), Some(2));
    assert_eq!(status(&["--help"]), Some(0));
}
