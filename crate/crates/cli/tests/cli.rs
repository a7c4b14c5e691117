use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn teq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teq")).args(args).output().expect("run teq")
}

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}.mat", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn has_number(v: &Value) -> bool {
    match v {
        Value::Number(_) => true,
        Value::Array(a) => a.iter().any(has_number),
        Value::Object(m) => m.values().any(has_number),
        _ => false,
    }
}

#[test]
fn check_te_on_figure1() {
    let o = teq(&["check-te", &fixture("figure1")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("totally equimodular: true"));
    assert!(stderr(&o).contains("elapsed"));
}

#[test]
fn check_tu_reports_a_witness() {
    let o = teq(&["check-tu", &fixture("minnontu2")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness rows [0, 1] cols [0, 1] det 2"));
}

#[test]
fn check_te_reports_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.mat");
    std::fs::write(&p, "1 1 0\n1 -1 0\n1 1 1\n2 0 1\n").unwrap();
    let o = teq(&["check-te", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("totally equimodular: false"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.mat");
    std::fs::write(&p, "# comment\n1 2\n3 4/0\n").unwrap();
    let o = teq(&["check-te", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3, column 3"), "{}", stderr(&o));
    assert_eq!(teq(&["check-te", "/nonexistent.mat"]).status.code(), Some(2));
    assert_eq!(teq(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn classify_fixtures() {
    let o = teq(&["classify", &fixture("conjecture6")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("thick te-interlace of size 6, equideterminant 64"));
    let o = teq(&["classify", &fixture("minnontu3")]);
    assert!(stdout(&o).contains("te-lace of size 3, equideterminant 2"));
    assert_eq!(teq(&["classify", &fixture("figure1")]).status.code(), Some(1));
}

#[test]
fn decompose_is_reproducible() {
    let a = teq(&["decompose", &fixture("conjecture4")]);
    let b = teq(&["decompose", &fixture("conjecture4")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["command"], "decompose");
    assert_eq!(v["result"]["bricks"][0]["type"], "thick te-interlace");
    assert!(!has_number(&v));
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["certificates", "command", "input", "result", "version"]);
}

#[test]
fn hilbert_and_oracle_agree() {
    let f = teq(&["hilbert", &fixture("conjecture4")]);
    let o = teq(&["oracle", &fixture("conjecture4")]);
    let set = |v: &Value| {
        let mut s: Vec<String> = v["result"]["elements"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| e["vector"].to_string())
            .collect();
        s.sort();
        s
    };
    let (f, o) = (json(&f), json(&o));
    assert_eq!(set(&f), set(&o));
    assert_eq!(f["result"]["size"], "11");
    let quarter: Vec<&Value> = f["result"]["elements"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["origin"] == "quarter-sum")
        .collect();
    assert_eq!(quarter.len(), 1);
    assert_eq!(quarter[0]["vector"], serde_json::json!(["1", "0", "0", "0"]));
}

fn triangulate_to(name: &str, dir: &Path) -> String {
    let out = dir.join(format!("{name}.json"));
    let o = teq(&["triangulate", &fixture(name), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    out.to_str().unwrap().to_string()
}

#[test]
fn triangulations_reverify() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["conjecture4", "minnontu2", "minnontu3"] {
        let path = triangulate_to(name, dir.path());
        let o = teq(&["verify", &path]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert!(stdout(&o).contains("regular pass"));
    }
}

#[test]
fn verify_rejects_a_damaged_triangulation() {
    let dir = tempfile::tempdir().unwrap();
    let path = triangulate_to("conjecture4", dir.path());
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["result"]["cells"].as_array_mut().unwrap().pop();
    std::fs::write(&path, v.to_string()).unwrap();
    let o = teq(&["verify", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("covering FAIL"));
    std::fs::write(&path, "{").unwrap();
    assert_eq!(teq(&["verify", &path]).status.code(), Some(2));
}

#[test]
fn hunt_sizes() {
    let o = teq(&["hunt", "--size", "4", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["representatives"].as_array().unwrap().len(), 1);
    assert!(!has_number(&v));
    assert_eq!(teq(&["hunt", "--size", "5"]).status.code(), Some(2));
}

#[test]
fn hunt_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("hunt.ndjson");
    let ck = ck.to_str().unwrap();
    let first = teq(&["hunt", "--size", "6", "--resume", ck]);
    let lines = std::fs::read_to_string(ck).unwrap().lines().count();
    assert!(lines > 0);
    let second = Command::new(env!("CARGO_BIN_EXE_teq"))
        .args(["hunt", "--size", "6", "--resume", ck])
        .env("TEQ_JOBS", "1")
        .output()
        .unwrap();
    let (a, b) = (json(&first), json(&second));
    assert_eq!(a["result"]["representatives"], b["result"]["representatives"]);
    assert_eq!(a["result"]["candidatesExamined"], b["result"]["candidatesExamined"]);
    assert_eq!(b["result"]["shardsResumed"], b["result"]["shards"]);
    assert_eq!(std::fs::read_to_string(ck).unwrap().lines().count(), lines);
}
