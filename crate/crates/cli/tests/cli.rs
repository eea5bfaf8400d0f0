use std::io::Write;
use std::process::{Command, Output, Stdio};

use mtgraph::{decode_graph6, encode_graph6, verify_order, Graph, MTOrder};
use serde_json::Value;

fn mtgraph(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mtgraph"))
        .args(args)
        .env_remove("MTGRAPH_JOBS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = mtgraph(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json_lines(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn g6(g: &Graph) -> String {
    format!("{}\n", encode_graph6(g))
}

#[test]
fn five_cycle_is_rejected_with_witness() {
    let lines = json_lines(&ok(&["recognize"], &g6(&Graph::cycle(5))));
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["mock_threshold"], false);
    assert_eq!(lines[0]["witness"]["vertices"].as_array().unwrap().len(), 5);
}

#[test]
fn seven_cycle_is_two_mt() {
    let c7 = g6(&Graph::cycle(7));
    assert_eq!(json_lines(&ok(&["recognize"], &c7))[0]["mock_threshold"], false);
    assert_eq!(json_lines(&ok(&["recognize", "-k", "2"], &c7))[0]["mock_threshold"], true);
}

#[test]
fn emitted_certificates_verify() {
    let graphs = ok(&["enumerate", "--max-n", "6"], "");
    let reports = json_lines(&ok(&["recognize"], &graphs));
    assert_eq!(reports.len(), graphs.lines().count());
    let mut members = 0;
    for (line, report) in graphs.lines().zip(&reports) {
        assert_eq!(report["graph6"], line);
        if report["mock_threshold"] == true {
            let cert: MTOrder = serde_json::from_value(report["certificate"].clone()).unwrap();
            assert!(verify_order(&decode_graph6(line).unwrap(), &cert));
            members += 1;
        }
    }
    assert!(members > 0 && members < reports.len());
}

#[test]
fn butterfly_family_is_forbidden() {
    let family = ok(&["family", "butterfly"], "");
    let reports = json_lines(&ok(&["recognize"], &family));
    assert_eq!(reports.len(), 19);
    assert!(reports.iter().all(|r| r["mock_threshold"] == false));
}

#[test]
fn output_does_not_depend_on_jobs() {
    let graphs = ok(&["enumerate", "--max-n", "7"], "");
    assert_eq!(ok(&["classify", "--jobs", "1"], &graphs), ok(&["classify", "--jobs", "4"], &graphs));
    assert_eq!(ok(&["census", "--max-n", "8", "--jobs", "1"], ""), ok(&["census", "--max-n", "8", "--jobs", "3"], ""));
}

#[test]
fn census_summary_counts() {
    let summary: Value = serde_json::from_str(&ok(&["census", "--max-n", "9", "--mode", "mt-parents"], "")).unwrap();
    assert_eq!(summary["totalSporadic"], 228);
    assert_eq!(summary["perOrderSporadic"]["8"], 60);
    assert!(summary.get("elapsedSeconds").is_none());
}

#[test]
fn census_resumes_from_checkpoints() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let args = ["census", "--max-n", "8", "--shards", "8", "--checkpoint-dir", path];
    let mut interrupted = args.to_vec();
    interrupted.extend(["--stop-after-shards", "10"]);
    let first = mtgraph(&interrupted, "");
    assert_eq!(first.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&first.stderr).contains("resume"));
    let resumed = ok(&args, "");
    assert_eq!(resumed, ok(&["census", "--max-n", "8", "--shards", "8"], ""));
}

#[test]
fn verify_reports_missing_complements() {
    let catalog = ok(&["census", "--max-n", "7", "--format", "g6"], "");
    let report: Value = serde_json::from_str(&ok(&["verify"], &catalog)).unwrap();
    assert_eq!(report["ok"], true);
    let c6 = encode_graph6(&mtgraph::canonical_graph(&Graph::cycle(6)));
    let pruned: String = catalog.lines().filter(|l| *l != c6).map(|l| format!("{l}\n")).collect();
    let report: Value = serde_json::from_str(&ok(&["verify"], &pruned)).unwrap();
    assert_eq!(report["ok"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(mtgraph(&["recognize", "-k", "0"], "").status.code(), Some(1));
    assert_eq!(mtgraph(&["frobnicate"], "").status.code(), Some(1));
    assert_eq!(mtgraph(&["enumerate", "--max-n", "12"], "").status.code(), Some(1));
    assert_eq!(mtgraph(&["family", "clawfree"], "").status.code(), Some(1));

    let bad = mtgraph(&["recognize"], "Dhc\n\nD?{\nnot graph6!\n");
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 4"));
    assert_eq!(String::from_utf8_lossy(&bad.stdout).lines().count(), 2);

    let huge = mtgraph(&["recognize"], "~?@@\n");
    assert_eq!(huge.status.code(), Some(3));
    let many_edges = g6(&Graph::complete(12));
    assert_eq!(mtgraph(&["linegraph"], &many_edges).status.code(), Some(3));
    assert!(mtgraph(&["linegraph", "--method", "structure"], &many_edges).status.success());
}

#[test]
fn line_graph_methods_agree() {
    let graphs = ok(&["enumerate", "--max-n", "6"], "");
    let verdicts = |method: &str| -> Vec<Value> {
        json_lines(&ok(&["linegraph", "--method", method], &graphs)).into_iter().map(|r| r["mock_threshold_line"].clone()).collect()
    };
    let construct = verdicts("construct");
    assert_eq!(construct, verdicts("forbidden"));
    assert_eq!(construct, verdicts("structure"));
}

#[test]
fn clique_numbers_of_a_threshold_graph() {
    let mut g = Graph::complete(4);
    g.add_vertex(1);
    let report = &json_lines(&ok(&["clique"], &g6(&g)))[0];
    assert_eq!((report["omega"].as_u64(), report["alpha"].as_u64(), report["chi"].as_u64()), (Some(4), Some(2), Some(4)));
    assert_eq!(json_lines(&ok(&["clique"], &g6(&Graph::cycle(5))))[0]["omega"], Value::Null);
}

#[test]
fn jobs_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_mtgraph")).args(["enumerate", "--max-n", "3"]).env("MTGRAPH_JOBS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn clawfree_family_members_are_clawfree_mt() {
    for (t, params) in [("III", r#"{"pendants":[2,1,1]}"#), ("II", r#"{"s":3,"pendants":[1,1]}"#), ("I", r#"{"stars":[1,2]}"#)] {
        let graph = ok(&["family", "clawfree", "--type", t, "--params", params], "");
        let report = &json_lines(&ok(&["classify"], &graph))[0];
        assert_eq!(report["mock_threshold"], true, "{t}");
        assert!(report["classes"].as_array().unwrap().contains(&Value::from("ClawFree")), "{t}");
        assert!(report["clawfree"].get("NotInClass").is_none(), "{t}: {report}");
    }
}
