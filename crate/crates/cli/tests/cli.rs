use std::process::{Command, Output};

use serde_json::Value;

fn flowpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_triangle_json() {
    let o = flowpoly(&["analyze", "--graph", "complete:3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["graph"]["spec"], "complete:3");
    assert_eq!(report["polynomials"]["mflow"], serde_json::json!(["-1", "1"]));
    assert_eq!(report["hstar"]["tension"]["entries"], serde_json::json!(["1", "4", "1"]));
    let checks = report["checks"].as_object().unwrap();
    assert_eq!(checks.len(), 12);
    assert!(checks.values().all(|c| c["status"] == "pass"));
}

#[test]
fn analyze_path_skips_flow_checks() {
    let o = flowpoly(&["analyze", "--graph", "path:3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let line = text
        .lines()
        .find(|l| l.trim_start().starts_with("flow_sandwich"))
        .unwrap();
    assert!(line.contains("skipped") && line.contains("bridge"));
}

#[test]
fn analyze_selected_checks_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k4.json");
    let o = flowpoly(&[
        "analyze",
        "--graph",
        "complete:4",
        "--checks",
        "flow_sandwich,tutte_consistency",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    let checks = report["checks"].as_object().unwrap();
    assert_eq!(checks.keys().collect::<Vec<_>>(), ["flow_sandwich", "tutte_consistency"]);
}

#[test]
fn analyze_edge_list_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    std::fs::write(&path, "# square\n1 2\n2 3\n3 4\n4 1\n").unwrap();
    let spec = format!("file:{}", path.display());
    let o = flowpoly(&["analyze", "--graph", &spec, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["classification"]["cyclomatic_number"], 1);
}

#[test]
fn reports_are_deterministic() {
    let args = ["analyze", "--graph", "theta:1:2:2", "--format", "json"];
    assert_eq!(flowpoly(&args).stdout, flowpoly(&args).stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["analyze", "--bogus"],
        vec!["analyze", "--graph", "wheel:5"],
        vec!["analyze", "--graph", "complete:3", "--checks", "nonsense"],
        vec!["analyze", "--graph", "complete:3", "--format", "xml"],
        vec!["tables"],
        vec!["frobnicate"],
    ] {
        let o = flowpoly(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn eulerian_table() {
    let o = flowpoly(&["tables", "--eulerian", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for row in ["n=2: 0 1 1", "n=3: 0 1 4 1", "n=4: 0 1 11 11 1", "A(n,n+1) = 0"] {
        assert!(text.contains(row), "{row}");
    }
    let o = flowpoly(&["tables", "--macmahon", "4"]);
    assert!(stdout(&o).contains("n=4: 0 1 23 23 1"));
}

#[test]
fn small_corpus_run() {
    let dir = tempfile::tempdir().unwrap();
    let o = flowpoly(&[
        "corpus",
        "--max-vertices",
        "3",
        "--max-edges",
        "3",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let summary: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["fail"], 0);
    // 4 simple graphs plus cycle:1, cycle:2, bouquet:1..3, theta:1:1:1
    assert_eq!(summary["graphs"], 10);
    let first = &summary["reports"][0];
    assert!(dir.path().join(first["file"].as_str().unwrap()).exists());
}
