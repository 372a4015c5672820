use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn racah(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_racah")).args(args).env_remove("RACAH_JOBS").output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json_report(args: &[&str], dir: &Path, name: &str) -> (i32, Value) {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    full.extend(["--report", p]);
    let out = racah(&full);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("no report ({e}); stderr: {}", stderr(&out)));
    (code(&out), serde_json::from_str(&text).expect("valid JSON"))
}

fn all_statuses_ok(doc: &Value) -> bool {
    doc["results"].as_array().unwrap().iter().all(|r| matches!(r["status"].as_str(), Some("pass" | "skipped")))
}

#[test]
fn verify_classical_generic_exhaustive() {
    let out = racah(&["verify", "--model", "generic", "--frame", "classical", "--n", "4", "--mode", "exhaustive"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let md = String::from_utf8(out.stdout).unwrap();
    assert!(md.contains("| `racah.classical.ho1` | 4 | pass |"), "{md}");
}

#[test]
fn verify_quantum_kc_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let (status, doc) = json_report(&["verify", "--model", "kc", "--frame", "quantum", "--n", "3"], dir.path(), "out.json");
    assert_eq!(status, 0);
    assert_eq!(doc["tool_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(doc["config"]["model"], "kc");
    assert_eq!(doc["config"]["frame"], "quantum");
    assert!(all_statuses_ok(&doc));
    let ids: Vec<&str> = doc["results"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"kc.quantum.hocKC2"));
    assert!(ids.contains(&"kc.quantum.compact.RR"));
}

#[test]
fn dimension_below_two_is_a_usage_error() {
    assert_eq!(code(&racah(&["verify", "--n", "1"])), 2);
    assert_eq!(code(&racah(&["verify", "--n", "5..3"])), 2);
}

#[test]
fn limit_sweeps_pass() {
    for model in ["sw", "kc"] {
        let out = racah(&["limit", "--model", model, "--n", "3"]);
        assert_eq!(code(&out), 0, "{model}: {}", stderr(&out));
    }
    let out = racah(&["limit", "--model", "generic", "--n", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = doc["results"].as_array().unwrap();
    assert!(results.iter().any(|r| r["status"] == "skipped"));
    assert!(results.iter().any(|r| r["status"] == "pass"));
}

#[test]
fn independence_counts() {
    let dir = tempfile::tempdir().unwrap();
    let (status, doc) = json_report(&["independence", "--model", "sw", "--n", "4"], dir.path(), "sw.json");
    assert_eq!(status, 0);
    assert_eq!(doc["results"][0]["observed"], 7);
    let (status, doc) = json_report(&["independence", "--model", "generic", "--n", "5"], dir.path(), "generic.json");
    assert_eq!(status, 0);
    assert_eq!(doc["results"][0]["observed"], 7);
    assert_eq!(doc["results"][0]["expected"], 7);
}

#[test]
fn degenerate_points_are_inconclusive() {
    let out = racah(&["independence", "--model", "generic", "--n", "4", "--zero-momenta", "--points", "3"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("inconclusive"));
}

#[test]
fn oracle_runs() {
    let out = racah(&["oracle", "--model", "kc", "--frame", "classical", "--n", "4", "--points", "25", "--seed", "7"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = racah(&["oracle", "--model", "sw", "--frame", "quantum", "--n", "3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(code(&racah(&["oracle", "--points", "0"])), 2);
}

#[test]
fn oracle_mutation_control_is_reported() {
    let out = racah(&["oracle", "--frame", "classical", "--n", "3", "--mutations", "50", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let m = &doc["mutation_control"][0];
    assert_eq!(m["attempted"], 50);
    assert!(m["rate"].as_f64().unwrap() >= 0.95);
}

#[test]
fn unwritable_report_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.json");
    let out = racah(&["verify", "--frame", "classical", "--report", path.to_str().unwrap()]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
}

#[test]
fn reports_are_reproducible_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--model", "sw", "--n", "5", "--samples", "3", "--frame", "classical"];
    let write = |name: &str, extra: &[&str]| {
        let path = dir.path().join(name);
        let mut full: Vec<&str> = args.to_vec();
        full.extend(extra);
        full.extend(["--report", path.to_str().unwrap()]);
        assert_eq!(code(&racah(&full)), 0);
        std::fs::read(path).unwrap()
    };
    let a = write("a.json", &[]);
    let b = write("b.json", &["--jobs", "1"]);
    let c = write("c.json", &["--jobs", "3"]);
    assert_eq!(a, b);
    assert_eq!(a, c);
    let d = write("d.json", &["--seed", "9"]);
    assert_ne!(a, d);
}

#[test]
fn jobs_fall_back_to_environment() {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_racah"))
            .args(["independence", "--n", "3", "--points", "3"])
            .env("RACAH_JOBS", jobs)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("2")), 0);
    assert_eq!(code(&run("0")), 2);
}

#[test]
fn markdown_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.md");
    let out = racah(&["verify", "--frame", "classical", "--format", "md", "--report", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let md = std::fs::read_to_string(path).unwrap();
    assert!(md.starts_with("# racah verify"));
    assert!(md.contains("| relation | n | status |"));
}
