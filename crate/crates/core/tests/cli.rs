use std::path::Path;
use std::process::{Command, Output};

use hypermatch::format::read_khg;
use hypermatch::Matching;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypermatch")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn json(path: &str) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn gen_and_degree() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "b.khg");
    let out = run(&["gen", "--kind", "barrier", "-k", "3", "-n", "13", "--d", "3", "-o", &file]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let h = read_khg(&file).unwrap();
    assert_eq!((h.k(), h.n(), h.min_codegree()), (3, 13, 3));

    let report = path(dir.path(), "deg.json");
    let out = run(&["degree", &file, "-d", "1", "--json", &report]);
    assert_eq!(code(&out), 0);
    let v = json(&report);
    assert_eq!(v["d"], 1);
    assert_eq!(v["min_degree"].as_u64().unwrap() as usize, h.min_d_degree(1).unwrap());
}

#[test]
fn exact_match_below_threshold_succeeds_at_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "b.khg");
    assert_eq!(code(&run(&["gen", "--kind", "barrier", "-k", "3", "-n", "16", "-o", &file])), 0);
    let report = path(dir.path(), "exact.json");
    let out = run(&["match", &file, "--method", "exact", "--json", &report]);
    assert_eq!(code(&out), 0);
    let v = json(&report);
    assert_eq!(v["matching_size"], 4);
    assert_eq!(v["branch"], "exact");
}

#[test]
fn pipeline_fails_on_barrier_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "b.khg");
    assert_eq!(code(&run(&["gen", "--kind", "barrier", "-k", "3", "-n", "16", "--d", "4", "-o", &file])), 0);
    let report = path(dir.path(), "p.json");
    let out = run(&["match", &file, "--method", "pipeline", "--json", &report]);
    assert_eq!(code(&out), 2);
    let v = json(&report);
    assert_eq!(v["success"], false);
    assert_eq!(v["counters"]["fallback_exact_calls"], 1);
}

#[test]
fn pipeline_report_revalidates() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "p.khg");
    let out = run(&["gen", "--kind", "planted", "-k", "3", "-n", "17", "--seed", "5", "-o", &file]);
    assert_eq!(code(&out), 0);
    let report = path(dir.path(), "p.json");
    assert_eq!(code(&run(&["match", &file, "--json", &report])), 0);
    let v = json(&report);
    let lists: Vec<Vec<usize>> = serde_json::from_value(v["matching"].clone()).unwrap();
    let h = read_khg(&file).unwrap();
    let m = Matching::from_vertex_lists(&h, &lists).unwrap();
    assert!(h.is_valid_matching(&m));
    assert_eq!(m.len(), 5);
    assert_eq!(v["uncovered"], 2);
}

#[test]
fn greedy_and_reduction() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "r.khg");
    let out = run(&["gen", "--kind", "random", "-k", "4", "-n", "13", "--target", "2", "--seed", "1", "-o", &file]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&run(&["match", &file, "--method", "greedy"])), 0);
    let report = path(dir.path(), "red.json");
    let out = run(&["reduce-corollary", &file, "--json", &report]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&report);
    assert_eq!(v["reduction"]["dummies"], 1);
    assert!(v["matching_size"].as_u64().unwrap() >= 2);
}

#[test]
fn reduction_precondition_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "c.khg");
    let out =
        run(&["gen", "--kind", "random", "-k", "3", "-n", "10", "--target", "4", "--max-tries", "0", "-o", &file]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&run(&["reduce-corollary", &file])), 2);
}

#[test]
fn verify_campaign() {
    let dir = tempfile::tempdir().unwrap();
    let report = path(dir.path(), "v.json");
    let out = run(&["verify", "--k", "3", "--n-list", "10,12,13", "--samples", "6", "--seed", "2", "--json", &report]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("tightness"));
    let v = json(&report);
    assert_eq!(v["skipped_divisible"], serde_json::json!([12]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);

    let empty = run(&["verify", "--k", "3", "--n-list", "--samples", "3"]);
    assert_eq!(code(&empty), 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["match"])), 1);
    assert_eq!(code(&run(&["match", "x.khg", "--method", "magic"])), 1);
    assert_eq!(code(&run(&["degree", "/nonexistent/file.khg"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn malformed_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "bad.khg");
    std::fs::write(&file, "3 5 1\n0 1\n").unwrap();
    let out = run(&["degree", &file]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}
