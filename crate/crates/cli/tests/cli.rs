use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn grzh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grzh"))
        .args(args)
        .env_remove("GRZH_FORMAT")
        .env_remove("GRZH_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = grzh(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn count_examples() {
    assert_eq!(json(&["count", "--h", "6", "--n", "4", "--k", "2"])["count"], 4550);
    assert_eq!(json(&["count", "--h", "2", "--n", "4", "--k", "2"])["count"], 35);
    assert_eq!(json(&["count", "--h", "2", "--n", "4", "--k", "0"])["count"], 1);
    assert_eq!(grzh(&["count", "--h", "2", "--n", "2", "--k", "3"]).status.code(), Some(2));
    assert_eq!(grzh(&["count", "--h", "1", "--n", "2", "--k", "1"]).status.code(), Some(2));
    // beyond u64 the count is a decimal string
    let big = json(&["count", "--h", "1000000007", "--n", "8", "--k", "4"]);
    assert!(big["count"].is_string());
}

#[test]
fn enumerate_examples() {
    let out = grzh(&["enumerate", "--h", "4", "--n", "2", "--m", "1"]);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("4 2 1 6"));
    assert_eq!(text.lines().skip(1).count(), 6);
    let out = grzh(&["enumerate", "--h", "4", "--n", "2", "--m", "0"]);
    assert_eq!(stdout(&out).lines().next(), Some("4 2 0 1"));
    let out = grzh(&["enumerate", "--h", "12", "--n", "6", "--m", "3", "--enumeration-cap", "1000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn enumerate_to_file_round_trips_through_ekr() {
    let path = scratch("zero.fam");
    let summary = json(&["enumerate", "--h", "4", "--n", "2", "--m", "0", "--out", path.to_str().unwrap()]);
    assert_eq!(summary["count"], 1);
    let rep = json(&["ekr", "--h", "4", "--n", "2", "--m", "0", "--r", "0", "--family", path.to_str().unwrap()]);
    assert_eq!(rep["verdict"], "meets bound");
}

#[test]
fn graph_stats_examples() {
    let s = json(&["graph-stats", "--h", "2", "--n", "4", "--m", "2", "--r", "2", "--exact"]);
    assert_eq!((s["omega"].clone(), s["alpha"].clone()), (Value::from(7), Value::from(5)));
    let s = json(&["graph-stats", "--h", "6", "--n", "4", "--m", "2", "--r", "2"]);
    assert_eq!((s["omega"].clone(), s["bounds"]["alpha_exact"].clone()), (Value::from(91), Value::from(50)));
    let s = json(&["graph-stats", "--h", "6", "--n", "4", "--m", "2", "--r", "3"]);
    assert_eq!(s["alpha"], 1);
    assert_eq!(grzh(&["graph-stats", "--h", "6", "--n", "4", "--m", "2", "--r", "1"]).status.code(), Some(2));
    let over = grzh(&["graph-stats", "--h", "6", "--n", "4", "--m", "2", "--r", "2", "--exact"]);
    assert_eq!(over.status.code(), Some(3));
}

#[test]
fn edge_list_file() {
    let path = scratch("edges.txt");
    let s = json(&["graph-stats", "--h", "2", "--n", "4", "--m", "2", "--r", "2", "--edges", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count() as u64, s["edges"].as_u64().unwrap());
    assert_eq!(text.lines().next(), Some("0 1"));
}

#[test]
fn golden_reports() {
    let cases: [(&str, &[&str]); 6] = [
        ("graph_stats_z2_exact.json", &["graph-stats", "--h", "2", "--n", "4", "--m", "2", "--r", "2", "--exact"]),
        ("graph_stats_z6.json", &["graph-stats", "--h", "6", "--n", "4", "--m", "2", "--r", "2"]),
        ("graph_stats_z6_complete.json", &["graph-stats", "--h", "6", "--n", "4", "--m", "2", "--r", "3"]),
        ("graph_stats_z2_n5_exact.json", &["graph-stats", "--h", "2", "--n", "5", "--m", "2", "--r", "2", "--exact"]),
        ("ekr_bound_z6.json", &["ekr", "--h", "6", "--n", "4", "--m", "2", "--r", "1"]),
        ("count_z12.json", &["count", "--h", "12", "--n", "4", "--k", "2", "--m", "1"]),
    ];
    for (file, args) in cases {
        assert_eq!(stdout(&grzh(args)), golden(file), "{file}");
    }
}

#[test]
fn verify_exit_codes_and_determinism() {
    let a = grzh(&["verify", "--seed", "42", "--h", "2,6", "--samples", "40"]);
    let b = grzh(&["verify", "--seed", "42", "--h", "2,6", "--samples", "40"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = grzh(&["verify", "--seed", "43", "--h", "2,6", "--samples", "40"]);
    assert_ne!(a.stdout, c.stdout);
    let bad = grzh(&["verify", "--suite", "dimension", "--h", "6", "--samples", "20", "--inject-fault"]);
    assert_eq!(bad.status.code(), Some(4));
    let rep: Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(rep["passed"], false);
}

#[test]
fn ekr_family_checks() {
    let all = scratch("planes.fam");
    json(&["enumerate", "--h", "2", "--n", "4", "--m", "2", "--out", all.to_str().unwrap()]);
    let text = std::fs::read_to_string(&all).unwrap();
    // planes through e_1: their first canonical row is e_1
    let star: Vec<&str> = text.lines().skip(1).filter(|l| l.starts_with("1 0 0 0 ")).collect();
    assert_eq!(star.len(), 7);
    let write = |name: &str, members: &[&str]| {
        let p = scratch(name);
        std::fs::write(&p, format!("2 4 2 {}\n{}\n", members.len(), members.join("\n"))).unwrap();
        p
    };
    let full = write("star.fam", &star);
    let rep = json(&["ekr", "--h", "2", "--n", "4", "--m", "2", "--r", "1", "--family", full.to_str().unwrap()]);
    assert_eq!(rep["verdict"], "meets bound");
    assert_eq!(rep["family_type"], "star");
    let short = write("short.fam", &star[..3]);
    let rep = json(&["ekr", "--h", "2", "--n", "4", "--m", "2", "--r", "1", "--family", short.to_str().unwrap()]);
    assert_eq!(rep["verdict"], "below bound");
    // two planes meeting only in zero
    let disjoint = write("disjoint.fam", &["1 0 0 0 0 1 0 0", "0 0 1 0 0 0 0 1"]);
    let rep = json(&["ekr", "--h", "2", "--n", "4", "--m", "2", "--r", "1", "--family", disjoint.to_str().unwrap()]);
    assert_eq!(rep["verdict"], "not r-intersecting");
    let out = grzh(&["ekr", "--h", "3", "--n", "4", "--m", "2", "--r", "1", "--family", full.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn code_examples() {
    let c = json(&["code", "--h", "2", "--n", "4", "--m", "2", "--d", "4"]);
    assert_eq!((c["size"].clone(), c["method"].clone()), (Value::from(5), Value::from("exact")));
    let c = json(&["code", "--h", "6", "--n", "4", "--m", "2", "--d", "4"]);
    assert_eq!((c["size"].clone(), c["method"].clone()), (Value::from(50), Value::from("product_lift")));
    assert_eq!(c["optimal"], true);
    assert_eq!(c["verified_independent"], true);
    let c = json(&["code", "--h", "2", "--n", "4", "--m", "2", "--d", "6"]);
    assert_eq!(c["size"], 1);
    assert_eq!(grzh(&["code", "--h", "2", "--n", "4", "--m", "2", "--d", "5"]).status.code(), Some(2));
}

#[test]
fn rank_from_stdin() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_grzh"))
        .args(["rank", "--matrix", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"6 2 2\n2 3\n4 1\n").unwrap();
    let rep: Value = serde_json::from_slice(&child.wait_with_output().unwrap().stdout).unwrap();
    assert_eq!((rep["inner_rank"].clone(), rep["mccoy_rank"].clone()), (Value::from(2), Value::from(1)));
    assert_eq!(rep["determinant"], 2);
}

#[test]
fn flags_override_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_grzh"));
        cmd.args(["count", "--h", "2", "--n", "4", "--k", "2"]).args(extra);
        match env {
            Some(v) => cmd.env("GRZH_FORMAT", v),
            None => cmd.env_remove("GRZH_FORMAT"),
        };
        String::from_utf8(cmd.output().unwrap().stdout).unwrap()
    };
    assert!(run(None, &[]).starts_with('{'));
    assert!(run(Some("csv"), &[]).starts_with("count,"));
    assert!(run(Some("csv"), &["--format", "json"]).starts_with('{'));
}
