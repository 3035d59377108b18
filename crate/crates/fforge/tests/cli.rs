use std::fs;
use std::process::{Command, Output};

use fforge::formats::write_edge_list;
use fforge_core::{RoseParams, Tree};

fn fforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fforge")).args(args).output().expect("binary runs")
}

fn edge_file(dir: &tempfile::TempDir, name: &str, tree: &Tree) -> String {
    let path = dir.path().join(name);
    let mut buf = Vec::new();
    write_edge_list(tree, &mut buf).unwrap();
    fs::write(&path, buf).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn analyze_path_and_rose() {
    let dir = tempfile::tempdir().unwrap();
    let p5 = edge_file(&dir, "p5.txt", &Tree::path(5).unwrap());
    let out = fforge(&["analyze", &p5, "--format", "json"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["fed"]["satisfied"], true);
    assert_eq!(json["fed"]["diameter"], 4);

    let r334 = edge_file(&dir, "r334.txt", &Tree::rose(RoseParams::new(3, 3, 4).unwrap()).unwrap());
    let out = fforge(&["--format", "json", "analyze", &r334]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["fed"]["satisfied"], false);

    let out = fforge(&["analyze", &r334]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("field,value\n"));
    assert!(text.contains("fed,false"));
}

#[test]
fn malformed_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "4\n1 2\n2 banana\n").unwrap();
    let out = fforge(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let cycle = dir.path().join("cycle.txt");
    fs::write(&cycle, "3\n1 2\n2 3\n3 1\n").unwrap();
    assert_eq!(fforge(&["analyze", cycle.to_str().unwrap()]).status.code(), Some(1));

    assert_eq!(fforge(&["analyze", "/nonexistent/tree.txt"]).status.code(), Some(1));
    assert_eq!(fforge(&["census"]).status.code(), Some(1));
    assert_eq!(fforge(&["census", "--n", "2"]).status.code(), Some(1));
}

#[test]
fn census_output_is_shard_independent() {
    let one = fforge(&["census", "--n", "11", "--shards", "1", "--list-violators"]);
    let four = fforge(&["census", "--n", "11", "--shards", "4", "--list-violators"]);
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(
        String::from_utf8(one.stdout).unwrap(),
        "n,trees,violations,ratio_percent,policy\n11,235,0,0.00,projection\n"
    );

    let a = fforge(&["census", "--n", "12", "--shards", "3", "--format", "json", "--list-violators"]);
    let b = fforge(&["census", "--n", "12", "--shards", "1", "--format", "json", "--list-violators"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn census_verify_and_strict() {
    let ok = fforge(&["census", "--n", "12", "--verify"]);
    assert_eq!(ok.status.code(), Some(0));
    let strict = fforge(&["census", "--n", "12", "--policy", "strict", "--verify"]);
    assert_eq!(strict.status.code(), Some(3));
    let text = String::from_utf8(strict.stdout).unwrap();
    assert!(text.ends_with(",strict\n"));
}

#[test]
fn dump_sequences_lists_every_tree() {
    let out = fforge(&["census", "--n", "7", "--dump-sequences", "--shards", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert_eq!(text.lines().next(), Some("1 2 3 4 2 3 4"));
}

#[test]
fn sweep_and_threshold_headers() {
    let out = fforge(&["rose", "--s", "3..4", "--t", "3..4", "--p", "0..3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,t,p,alpha_numeric,alpha_analytic,fed_numeric,fed_predicted,agreement"));
    assert_eq!(lines.clone().count(), 16);
    assert!(lines.all(|l| l.ends_with(",true")));

    let out = fforge(&["threshold", "--s", "3..5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("s,r_s,f_ss,floor_f,empirical_flip,asymptotic_ratio\n3,0.198062264195,"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.csv");
    let out = fforge(&["census", "--n", "9", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(fs::read_to_string(&path).unwrap().starts_with("n,trees,violations,ratio_percent,policy\n9,47,"));
}

#[test]
fn reports_run_to_completion() {
    let out = fforge(&["conjecture", "--n-max", "9", "--format", "json"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["trees_checked"].as_u64().unwrap() > 0);

    let out = fforge(&["suptest", "--s", "3", "--t-max", "6", "--p-probe", "40"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("# max_flip="));

    assert_eq!(fforge(&["conjecture", "--n-max", "15"]).status.code(), Some(1));
    assert_eq!(fforge(&["suptest", "--s", "2", "--t-max", "4", "--p-probe", "5"]).status.code(), Some(1));
}
