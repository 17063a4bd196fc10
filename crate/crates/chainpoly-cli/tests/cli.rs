//! End-to-end CLI tests: golden-file outputs, exit codes, format and
//! determinism across worker counts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_chainpoly")
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let raw = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path:?}: {e}"));
    // '#' lines are annotations; the remaining bytes are the expected output
    raw.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("CHAINPOLY_MAX_VISITS")
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn golden_chain_char_outputs_are_byte_identical() {
    for n in [3, 4, 5] {
        let graph = fixtures().join(format!("k{n}.json"));
        let got = stdout_of(&["chain-char", "--k", "2", "--graph", graph.to_str().unwrap()]);
        assert_eq!(got, golden(&format!("k{n}_chi2.txt")), "chi^2 golden for K{n}");
    }
}

#[test]
fn golden_flow_outputs_are_byte_identical() {
    for n in [3, 4, 5] {
        let graph = fixtures().join(format!("k{n}.json"));
        let got = stdout_of(&["flow", "--k", "2", "--graph", graph.to_str().unwrap()]);
        assert_eq!(got, golden(&format!("k{n}_flow2.txt")), "Flow^2 golden for K{n}");
    }
}

#[test]
fn all_routes_print_the_same_polynomial() {
    let graph = fixtures().join("k3.json");
    let g = graph.to_str().unwrap();
    let def = stdout_of(&["chain-char", "--k", "2", "--graph", g, "--route", "definition"]);
    let tutte = stdout_of(&["chain-char", "--k", "2", "--graph", g, "--route", "tutte"]);
    let mobius = stdout_of(&["chain-char", "--k", "2", "--graph", g, "--route", "mobius"]);
    assert_eq!(def, tutte);
    assert_eq!(def, mobius);
}

#[test]
fn output_is_identical_for_any_jobs_value() {
    let graph = fixtures().join("k4.json");
    let g = graph.to_str().unwrap();
    let reference = stdout_of(&["chain-char", "--k", "3", "--graph", g]);
    for jobs in ["1", "2", "5"] {
        let got = stdout_of(&["chain-char", "--k", "3", "--graph", g, "--jobs", jobs]);
        assert_eq!(got, reference, "--jobs {jobs}");
    }
}

#[test]
fn counts_match_the_published_evaluations() {
    let graph = fixtures().join("k3.json");
    let g = graph.to_str().unwrap();
    assert_eq!(stdout_of(&["count-flows", "--graph", g, "--groups", "Z2,Z2"]), "3\n");
    assert_eq!(
        stdout_of(&["count-flows", "--graph", g, "--groups", "Z2xZ2,Z2"]),
        stdout_of(&["count-flows", "--graph", g, "--groups", "Z4,Z2"]),
    );
    assert_eq!(stdout_of(&["count-colorings", "--graph", g, "--palette", "2,2"]), "28\n");
}

#[test]
fn json_format_is_machine_parseable() {
    let graph = fixtures().join("k3.json");
    let g = graph.to_str().unwrap();
    let out = stdout_of(&["chain-char", "--k", "2", "--graph", g, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    assert_eq!(v["vars"], serde_json::json!(["t1", "t2"]));
    assert_eq!(v["terms"][0]["exp"], serde_json::json!([2, 2]));

    let count = stdout_of(&["count-flows", "--graph", g, "--groups", "Z2,Z2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&count).unwrap();
    assert_eq!(v["count"], serde_json::json!(3));

    let report = stdout_of(&[
        "verify",
        "--suite",
        "routes",
        "--matroid",
        r#"{"type":"uniform","r":2,"n":4}"#,
        "--k",
        "2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["checks"][0]["status"], serde_json::json!("pass"));
}

#[test]
fn verify_all_passes_on_u24() {
    let out = run(&[
        "verify",
        "--suite",
        "all",
        "--matroid",
        r#"{"type":"uniform","r":2,"n":4}"#,
        "--k",
        "2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("0 failed"), "{text}");
}

#[test]
fn exit_codes_follow_the_contract() {
    // parse error -> 2, with no partial stdout
    let out = run(&["chain-char", "--k", "2", "--matroid", r#"{"type":"uniform","r":9}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());

    // work cap -> 3, message carries the required budget
    let graph = fixtures().join("k3.json");
    let out = run(&[
        "chain-char",
        "--k",
        "2",
        "--graph",
        graph.to_str().unwrap(),
        "--max-visits",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("27"));
    assert!(out.stdout.is_empty());

    // hypothesis violation -> 4
    let loopy = std::env::temp_dir().join("chainpoly_cli_test_loopy.json");
    std::fs::write(&loopy, r#"{"vertices":2,"edges":[[0,0],[0,1]]}"#).unwrap();
    let out = run(&["chromatic", "--k", "1", "--graph", loopy.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(out.stdout.is_empty());

    // signs on a non-simple matroid -> 4
    let out = run(&[
        "verify",
        "--suite",
        "signs",
        "--matroid",
        r#"{"type":"uniform","r":1,"n":2}"#,
        "--k",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn env_cap_is_honored_and_flag_overrides_it() {
    let graph = fixtures().join("k3.json");
    let g = graph.to_str().unwrap();
    let out = Command::new(bin())
        .args(["chain-char", "--k", "2", "--graph", g])
        .env("CHAINPOLY_MAX_VISITS", "7")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    let out = Command::new(bin())
        .args(["chain-char", "--k", "2", "--graph", g, "--max-visits", "1000"])
        .env("CHAINPOLY_MAX_VISITS", "7")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn stdin_graph_input_works() {
    use std::io::Write;
    let mut child = Command::new(bin())
        .args(["chromatic", "--k", "1", "--graph", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(br#"{"vertices":3,"edges":[[0,1],[0,2],[1,2]]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "t1^3 - 3*t1^2 + 2*t1\n"
    );
}
