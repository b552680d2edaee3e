use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn wpolar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wpolar")).args(args).output().unwrap()
}

fn wpolar_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_wpolar"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn compute_path_both_ways() {
    let o = wpolar_stdin(&["compute", "--input", "-", "--method", "both"], "7\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4 4\n");
}

#[test]
fn compute_reads_file() {
    let path = scratch("star.txt");
    std::fs::write(&path, "5\n0 1\n0 2\n0 3\n0 4\n").unwrap();
    let o = wpolar(&["compute", "--input", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn bad_input_exits_one() {
    let o = wpolar_stdin(&["compute", "--input", "-"], "5\n0 1\n0 2\n0 3\n0 4\n1 2\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a tree"));
    let o = wpolar(&["compute", "--input", "/nonexistent/tree.txt"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(wpolar(&[]).status.code(), Some(1));
    assert_eq!(wpolar(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(wpolar(&["bound", "--which", "max-b", "--n", "12"]).status.code(), Some(1));
    assert_eq!(wpolar(&["bound", "--which", "max-b", "--n", "12", "--b", "1", "--k", "3"]).status.code(), Some(1));
    assert_eq!(wpolar(&["bound", "--which", "max-k", "--n", "12", "--b", "1"]).status.code(), Some(1));
    assert_eq!(wpolar(&["bound", "--which", "max-q", "--n", "12", "--b", "1"]).status.code(), Some(1));
    assert_eq!(wpolar(&["--help"]).status.code(), Some(0));
}

#[test]
fn enumerate_count_and_streams() {
    assert_eq!(stdout(&wpolar(&["enumerate", "--n", "7", "--emit", "count"])), "9\n");
    let filtered = stdout(&wpolar(&["enumerate", "--n", "12", "--b", "1", "--emit", "count"]));
    assert_eq!(filtered.trim(), count(12, "--b", 1));
    let trees = stdout(&wpolar(&["enumerate", "--n", "6"]));
    let docs: Vec<&str> = trees.split("\n\n").collect();
    assert_eq!(docs.len(), 5);
    assert!(docs.iter().all(|d| d.starts_with("6\n") && d.trim_end().lines().count() == 6));
    let census = stdout(&wpolar(&["enumerate", "--n", "8", "--k", "5", "--emit", "census"]));
    let mut lines = census.lines();
    assert_eq!(lines.next(), Some("n1,n2,n3,n4,b,k,wp,code"));
    assert!(lines.all(|l| l.split(',').nth(5) == Some("5")));
}

fn count(n: usize, flag: &str, value: usize) -> String {
    let trees = stdout(&wpolar(&["enumerate", "--n", &n.to_string(), "--emit", "census"]));
    let column = if flag == "--b" { 4 } else { 5 };
    trees
        .lines()
        .skip(1)
        .filter(|l| l.split(',').nth(column) == Some(value.to_string().as_str()))
        .count()
        .to_string()
}

#[test]
fn enumerate_rejects_empty_order() {
    assert_eq!(wpolar(&["enumerate", "--n", "0", "--emit", "count"]).status.code(), Some(1));
}

#[test]
fn bound_prints_json() {
    let o = wpolar(&["bound", "--which", "max-b", "--n", "12", "--b", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with('{') && s.contains("\"value\":15"), "{s}");
    let s = stdout(&wpolar(&["bound", "--which", "MIN-B", "--n", "10", "--b", "3"]));
    assert!(s.contains("\"value\":8"), "{s}");
    let s = stdout(&wpolar(&["bound", "--which", "max-k", "--n", "10", "--k", "4"]));
    assert!(s.contains("\"value\":13"), "{s}");
}

#[test]
fn construct_round_trips_through_compute() {
    let path = scratch("bt2.txt");
    let o = wpolar(&["construct", "--family", "bt2", "--n", "12", "--b", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = wpolar(&["compute", "--input", path.to_str().unwrap(), "--method", "both"]);
    assert_eq!(stdout(&o), "15 15\n");
    let o = wpolar(&["construct", "--family", "ct1", "--n", "10", "--k", "4"]);
    let text = stdout(&o);
    assert!(text.starts_with("10\n"));
    assert_eq!(stdout(&wpolar_stdin(&["compute", "--input", "-"], &text)), "13\n");
    assert_eq!(wpolar(&["construct", "--family", "bnb", "--n", "9", "--b", "1"]).status.code(), Some(1));
}

#[test]
fn verify_clean_campaign_exits_zero() {
    let o = wpolar(&["verify", "--which", "wp-equiv", "--n-min", "4", "--n-max", "9", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert_eq!(csv.lines().next(), Some("n,trees,mismatches,max_wp"));
    assert!(csv.contains("\n7,9,0,"));
    let o = wpolar(&["verify", "--which", "bounds", "--bound", "max-b", "--n-min", "7", "--n-max", "11", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let json = stdout(&o);
    assert!(json.contains("\"passed\": true") && json.contains("\"elapsed_ms\""));
}

#[test]
fn verify_violations_exit_two() {
    let path = scratch("minb.csv");
    let o = wpolar(&[
        "verify", "--which", "bounds", "--bound", "min-b", "--n-min", "7", "--n-max", "8", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.lines().any(|l| l.starts_with("min-b,7,1,3,") && l.contains(",false,")));
    assert!(!csv.contains("elapsed"));
}

#[test]
fn verify_min_k_table() {
    let o = wpolar(&["verify", "--which", "bounds", "--min-k-empirical", "--n-min", "9", "--n-max", "10", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert!(csv.starts_with("n,k,min_wp,"));
    assert!(csv.lines().any(|l| l.starts_with("9,7,6,")));
}

#[test]
fn verify_reports_are_deterministic() {
    let args = ["verify", "--which", "rules", "--n-min", "4", "--n-max", "9", "--format", "csv"];
    assert_eq!(stdout(&wpolar(&args)), stdout(&wpolar(&args)));
}

#[test]
fn verify_rejects_bad_ranges() {
    assert_eq!(wpolar(&["verify", "--which", "rules", "--n-min", "9", "--n-max", "4"]).status.code(), Some(1));
    assert_eq!(wpolar(&["verify", "--which", "rules", "--n-min", "4", "--n-max", "40"]).status.code(), Some(1));
    assert_eq!(
        wpolar(&["verify", "--which", "rules", "--min-k-empirical", "--n-min", "4", "--n-max", "6"]).status.code(),
        Some(1)
    );
}

#[test]
fn rules_list_names_all_fourteen() {
    let o = wpolar(&["rules", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let ids: Vec<&str> = text.lines().filter(|l| !l.starts_with('\t')).map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(ids.len(), 14);
    assert!(ids.contains(&"R3a") && ids.contains(&"R13"));
}
