use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn skewrank(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_skewrank"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Runs a subcommand on a graph given as text and checks the JSON against
/// the shipped schema.
fn json(cmd: &str, graph: &str, expect_code: i32) -> Value {
    let run = skewrank(&[cmd, "-"], graph);
    assert_eq!(run.code, expect_code, "stderr: {}", run.stderr);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_valid(cmd, &v);
    v
}

fn assert_valid(report: &str, v: &Value) {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "schemas", &format!("{report}.schema.json")]
        .iter()
        .collect();
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{report} report violates its schema: {errors:?}\n{v:#}");
}

const EVEN_C6: &str = "# evenly oriented hexagon\n6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n";
const ODD_C6: &str = "6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n";

#[test]
fn info_on_evenly_oriented_hexagon() {
    let v = json("info", EVEN_C6, 0);
    for (k, want) in [("n", 6), ("edges", 6), ("r", 6), ("sr", 4), ("d", 1), ("theta", 1), ("eta", 0), ("m", 3), ("p", 0)] {
        assert_eq!(v[k], want, "{k}");
    }
    assert_eq!(v["beta"], 1);
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn info_on_empty_graph() {
    let v = json("info", "3\n", 0);
    assert_eq!((v["r"].as_u64(), v["sr"].as_u64(), v["eta"].as_u64()), (Some(0), Some(0), Some(3)));
    assert_eq!(v["beta"], Value::Null);
}

#[test]
fn info_with_bounds_validates() {
    let run = skewrank(&["info", "--bounds", "-"], EVEN_C6);
    assert_eq!(run.code, 0);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_valid("info", &v);
    let bounds = v["bounds"].as_array().unwrap();
    assert!(bounds.iter().all(|b| b["status"] != "violated"));
    assert!(bounds.iter().any(|b| b["name"] == "skew_rank_lower" && b["lhs"] == b["rhs"]));
}

#[test]
fn parse_errors_name_the_line_and_exit_two() {
    let run = skewrank(&["info", "-"], "3\n0 1\n1 1\n");
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("self-loop at line 3"), "{}", run.stderr);
    let run = skewrank(&["info", "-"], "3\n0 1\n1 0\n");
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("line 3"));
    let run = skewrank(&["info", "/nonexistent/graph.txt"], "");
    assert_eq!(run.code, 2);
}

#[test]
fn classify_examples() {
    let v = json("classify", EVEN_C6, 0);
    assert_eq!((v["structural"].as_bool(), v["direct"].as_bool(), v["agreement"].as_bool()), (Some(true), Some(true), Some(true)));

    let v = json("classify", ODD_C6, 0);
    assert_eq!(v["cond2_cycles_even_mod4_evenly_oriented"], false);
    assert_eq!(v["direct"], false);
    assert_eq!(v["sr"], 6);

    let mut shared = String::from("11\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n");
    shared.push_str("0 6\n6 7\n7 8\n8 9\n9 10\n10 0\n");
    let v = json("classify", &shared, 0);
    assert_eq!(v["cond1_disjoint_cycles"], false);
    assert_eq!(v["direct"], false);
    assert_eq!(v["trace"], Value::Null);

    let v = json("classify", "3\n0 1\n2 1\n", 0);
    assert_eq!(v["structural"], true);
    assert_eq!(v["direct"], true);
    assert_eq!(v["trace"]["final"]["n"], 1);
}

#[test]
fn reduce_path_on_four_vertices() {
    let v = json("reduce", "4\n0 1\n1 2\n2 3\n", 0);
    assert_eq!(v["steps"].as_array().unwrap().len(), 2);
    assert_eq!(v["final"]["n"], 0);
    assert_eq!(v["success"], true);
}

#[test]
fn compress_tree_is_identity_and_notes_dropped_orientation() {
    let tree = "5\n0 1\n2 1\n1 3\n4 3\n";
    let v = json("compress", tree, 0);
    assert_eq!(v["t_graph"], "5\n0 1\n1 2\n1 3\n3 4\n");
    assert_eq!(v["gamma"], v["t_graph"]);
    assert!(v["note"].as_str().unwrap().contains("orientations dropped"));
}

#[test]
fn compress_hexagon_with_hanging_path() {
    let g = "8\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n0 6\n6 7\n";
    let v = json("compress", g, 0);
    // Off-cycle vertices 6, 7 become 0, 1; the hexagon becomes 2.
    assert_eq!(v["t_graph"], "3\n0 1\n0 2\n");
    assert_eq!(v["gamma"], "2\n0 1\n");
}

#[test]
fn compress_rejects_shared_cycle_vertex() {
    let run = skewrank(&["compress", "-"], "5\n0 1\n1 2\n2 0\n0 3\n3 4\n4 0\n");
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("vertex 0"), "{}", run.stderr);
}

#[test]
fn cycles_report_classes() {
    let v = json("cycles", "4\n0 1\n1 2\n2 3\n0 3\n", 0);
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["len"], 4);
    assert_eq!(v[0]["class"], "oddly_oriented");

    let v = json("cycles", "7\n0 1\n1 2\n2 0\n3 4\n4 5\n5 6\n6 3\n", 0);
    let classes: Vec<&str> = v.as_array().unwrap().iter().map(|c| c["class"].as_str().unwrap()).collect();
    assert_eq!(classes, ["odd_cycle", "evenly_oriented"]);

    let run = skewrank(&["cycles", "-"], "4\n0 1\n1 2\n2 3\n3 0\n0 2\n");
    assert_eq!(run.code, 2);
}

#[test]
fn verify_exhaustive_four() {
    let run = skewrank(&["verify", "--n", "4", "--exhaustive"], "");
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_valid("verify", &v);
    assert_eq!(v["stats"]["graphs_by_n"]["4"], 729);
    assert_eq!(v["totals"]["graphs"], 729 + 27 + 3 + 1);
    assert_eq!(v["totals"]["checks_failed"], 0);
    assert_eq!(v["all_passed"], true);
    assert!(v.get("wall_time_ms").is_none());
}

#[test]
fn verify_guards() {
    let run = skewrank(&["verify", "--n", "7", "--exhaustive"], "");
    assert_eq!(run.code, 2);
    let run = skewrank(&["verify", "--n", "6", "--exhaustive"], "");
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("allow_large"), "{}", run.stderr);
    let run = skewrank(&["verify", "--n", "4"], "");
    assert_eq!(run.code, 2);
    let run = skewrank(&["verify", "--n", "4", "--exhaustive", "--samples", "3"], "");
    assert_eq!(run.code, 2);
    let run = skewrank(&["verify", "--n", "4", "--exhaustive", "--checks", "bogus"], "");
    assert_eq!(run.code, 2);
}

#[test]
fn verify_random_selected_groups_with_timing() {
    let run = skewrank(
        &["verify", "--n", "9", "--samples", "200", "--seed", "3", "--checks", "bounds,order_confluence", "--timing"],
        "",
    );
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_valid("verify", &v);
    assert_eq!(v["config"]["checks"], serde_json::json!(["bounds", "order_confluence"]));
    assert!(v["wall_time_ms"].is_u64());
    let groups: Vec<&str> = v["checks"].as_object().unwrap().values().map(|c| c["group"].as_str().unwrap()).collect();
    assert!(groups.iter().all(|g| *g == "bounds" || *g == "order_confluence"));
}

#[test]
fn text_format_is_flat() {
    let run = skewrank(&["--format", "text", "info", "-"], EVEN_C6);
    assert_eq!(run.code, 0);
    assert!(run.stdout.lines().any(|l| l == "sr: 4"));
}

#[test]
fn thread_override_must_be_numeric() {
    let run = Command::new(env!("CARGO_BIN_EXE_skewrank"))
        .args(["verify", "--n", "3", "--exhaustive"])
        .env("SKEWRANK_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(run.status.code(), Some(2));
}
