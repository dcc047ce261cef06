use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn graphbt(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_graphbt")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn solve_writes_elements_and_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "p.json",
        r#"{"degree": 6, "constraints": [{"type": "centralizer", "perm": "(1,2)(3,6,5)"}]}"#,
    );
    let out = dir.path().join("r.json");
    let (code, _) = graphbt(&["solve", "--in", &input, "--mode", "strong", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 6);
    assert!(v["nodes"].is_u64());
}

#[test]
fn solve_empty_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "p.json",
        r#"{"degree": 4, "constraints": [{"type": "set_transport", "from": [1], "to": [1, 2]}]}"#,
    );
    let (code, stdout) = graphbt(&["solve", "--in", &input]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert!(v["elements"].as_array().unwrap().is_empty());
}

#[test]
fn bsgs_group_and_coset() {
    let dir = tempfile::tempdir().unwrap();
    let group = write(
        dir.path(),
        "g.json",
        r#"{"degree": 4, "constraints": [{"type": "group", "gens": ["(1,2)", "(1,2,3,4)"]}]}"#,
    );
    let (code, stdout) = graphbt(&["bsgs", "--in", &group]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["order"], "24");
    assert!(v["base"].as_array().unwrap().iter().all(|b| b.as_u64().unwrap() >= 1));

    let coset = write(
        dir.path(),
        "c.json",
        r#"{"degree": 4, "constraints": [
            {"type": "coset", "gens": ["(1,2)", "(3,4)"], "rep": "(1,3)(2,4)"},
            {"type": "set_transport", "from": [1, 2], "to": [3, 4]}]}"#,
    );
    let (code, stdout) = graphbt(&["bsgs", "--in", &coset, "--mode", "leon"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["order"], "4");
    assert!(v["rep"].is_string());

    let empty = write(
        dir.path(),
        "e.json",
        r#"{"degree": 4, "constraints": [
            {"type": "coset", "gens": ["(1,2)"], "rep": "()"},
            {"type": "set_transport", "from": [1], "to": [4]}]}"#,
    );
    assert_eq!(graphbt(&["bsgs", "--in", &empty]).0, 1);
}

#[test]
fn errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(graphbt(&["solve", "--in", "/nonexistent/problem.json"]).0, 2);
    let bad = write(dir.path(), "b.json", r#"{"degree": 3, "constraints": [{"type": "set_stab", "set": [9]}]}"#);
    assert_eq!(graphbt(&["solve", "--in", &bad]).0, 2);
    assert_eq!(graphbt(&["frobnicate"]).0, 2);
}

#[test]
fn bench_writes_reports_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let suite = write(
        dir.path(),
        "s.json",
        r#"{"families": [{"kind": "grid-set", "n": 3, "instances": 4},
                         {"kind": "subdirect", "k": 2, "n": 3, "instances": 3, "modes": ["leon", "strong"]}],
            "problems": [{"degree": 4, "constraints": [{"type": "set_stab", "set": [1, 2]}]}]}"#,
    );
    let run = |name: &str, jobs: &str| {
        let out = dir.path().join(name);
        let (code, _) = graphbt(&["bench", "--suite", &suite, "--out", out.to_str().unwrap(), "--seed", "9", "--jobs", jobs]);
        assert_eq!(code, 0);
        (
            std::fs::read_to_string(&out).unwrap(),
            std::fs::read_to_string(out.with_extension("summary.csv")).unwrap(),
            std::fs::read_to_string(out.with_extension("json")).unwrap(),
        )
    };
    let a = run("a.csv", "1");
    let b = run("b.csv", "3");
    assert_eq!(a, b);
    assert!(a.0.starts_with("family,params,instance,mode"));
    assert_eq!(a.0.lines().count(), 1 + 4 * 4 + 3 * 2 + 4);
}
