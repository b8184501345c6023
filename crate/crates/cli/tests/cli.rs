use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pcensus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcensus")).args(args).env_remove("PCENSUS_THREADS").output().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn reports(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn build_then_census_ito() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let out = pcensus(&["build", "ito", "--p", "3", "--r", "1", "-o", path_str(&g)]);
    assert!(out.status.success(), "{out:?}");
    let census = pcensus(&["census", path_str(&g)]);
    assert!(census.status.success());
    let v: Value = serde_json::from_slice(&census.stdout).unwrap();
    let counts: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["count"].as_str().unwrap()).collect();
    assert_eq!(counts, ["33", "24", "24"]);
    assert_eq!(v["group_id"], "ito(p=3,r=1)");
    assert_eq!(v["level"], "coset");
}

#[test]
fn build_shapes() {
    let out = pcensus(&["build", "ito", "--p", "3", "--r", "2"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["kind"].as_str(), v["dimV"].as_u64(), v["dimW"].as_u64()), (Some("class2"), Some(3), Some(3)));
    let out = pcensus(&["build", "theorem1", "--p", "3", "--n", "2"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dimV"].as_u64().unwrap() + v["dimW"].as_u64().unwrap(), 9);
}

#[test]
fn class3_needs_p_at_least_five() {
    let out = pcensus(&["build", "class3", "--p", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p >= 5 required"));
}

#[test]
fn class3_census_has_125_keys() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c3.json");
    assert!(pcensus(&["build", "class3", "--p", "5", "-o", path_str(&g)]).status.success());
    let out = pcensus(&["census", path_str(&g)]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 125);
}

#[test]
fn threads_do_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    assert!(pcensus(&["build", "ito", "--p", "3", "--r", "3", "-o", path_str(&g)]).status.success());
    let one = pcensus(&["--threads", "1", "census", path_str(&g)]);
    let four = pcensus(&["--threads", "4", "census", path_str(&g)]);
    let env = Command::new(env!("CARGO_BIN_EXE_pcensus")).args(["census", path_str(&g)]).env("PCENSUS_THREADS", "8").output().unwrap();
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, env.stdout);
    let v1 = pcensus(&["--threads", "1", "verify", "theorem1", "--p", "3", "--n", "2"]);
    let v4 = pcensus(&["--threads", "4", "verify", "theorem1", "--p", "3", "--n", "2"]);
    assert_eq!(v1.stdout, v4.stdout);
}

#[test]
fn corrupt_and_oversized_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"format_version\": 1, \"kind\": \"class2\"").unwrap();
    assert_eq!(pcensus(&["census", path_str(&bad)]).status.code(), Some(2));
    let big = dir.path().join("t3.json");
    assert!(pcensus(&["build", "theorem1", "--p", "3", "--n", "3", "-o", path_str(&big)]).status.success());
    let out = pcensus(&["census", path_str(&big)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("witness"));
}

#[test]
fn verify_claims() {
    let out = pcensus(&["verify", "theorem2", "--p", "5"]);
    assert!(out.status.success());
    let r = reports(&out);
    assert_eq!(r[0]["verdict"], "pass");
    assert_eq!(r[0]["computed"]["pr(1)"], "149/3125");
    assert!(r[0].get("millis").is_none());

    let out = pcensus(&["verify", "theorem1", "--p", "3", "--n", "2", "--mode", "exact", "--timing"]);
    assert!(out.status.success());
    assert!(reports(&out)[0]["millis"].is_string() || reports(&out)[0]["millis"].is_u64());

    let out = pcensus(&["verify", "lemma3.1", "--gens", "6"]);
    assert!(out.status.success());
    assert_eq!(reports(&out)[0]["verdict"], "pass");
}

#[test]
fn verify_exit_codes() {
    assert_eq!(pcensus(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(pcensus(&["verify", "theorem1", "--n", "5"]).status.code(), Some(2));
    let out = pcensus(&["verify", "ito", "--p", "3", "--r", "2", "--fault", "ito-tensor"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("conjugate-type"));
    let out = pcensus(&["verify", "theorem2", "--p", "3"]);
    assert!(out.status.success());
    assert_eq!(reports(&out)[0]["verdict"], "skipped");
}

#[test]
fn verify_all_restricted_to_three() {
    let out = pcensus(&["verify", "all", "--p", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = reports(&out);
    assert!(r.iter().any(|x| x["claim"] == "theorem2" && x["verdict"] == "skipped"));
    assert!(r.iter().all(|x| x["verdict"] != "fail"));
}
