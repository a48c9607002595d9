use std::path::PathBuf;

use serde_json::Value;
use zigzag::cli::run_from;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, Option<Value>) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let mut argv = vec!["zigzag"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--out", out.to_str().unwrap()]);
    let code = run_from(argv);
    let doc = std::fs::read_to_string(&out).ok().map(|t| serde_json::from_str(&t).unwrap());
    (code, doc)
}

#[test]
fn validate_reports_the_category() {
    let (code, doc) = run(&["validate", &data("fixture_a.toml")]);
    assert_eq!(code, 0);
    let doc = doc.unwrap();
    assert_eq!(doc["schema"], "lcsc-report/1");
    assert_eq!(doc["command"], "validate");
}

#[test]
fn hull_lists_six_elements_for_the_two_edge_graph() {
    let (code, doc) = run(&["hull", &data("fixture_a.toml")]);
    assert_eq!(code, 0);
    assert_eq!(doc.unwrap()["size"], 6);
}

#[test]
fn diagonal_fails_to_detect_ideals_for_the_group() {
    let (code, doc) = run(&["detect", &data("fixture_b.toml"), "--subalgebra", "diagonal"]);
    assert_eq!(code, 1);
    assert_eq!(doc.unwrap()["detection"]["verdict"], false);

    let (code, doc) = run(&["detect", &data("fixture_b.toml"), "--subalgebra", "siso"]);
    assert_eq!(code, 0);
    assert_eq!(doc.unwrap()["detection"]["verdict"], true);
}

#[test]
fn cyclic_graphs_have_no_finite_hull() {
    let (code, doc) = run(&["hull", &data("loop.toml")]);
    assert_eq!(code, 2);
    assert!(doc.is_none());
}

#[test]
fn report_skips_stages_for_cyclic_graphs() {
    let (code, doc) = run(&["report", &data("loop.toml")]);
    assert_eq!(code, 0);
    let skipped = doc.unwrap()["skipped"].as_array().unwrap().len();
    assert!(skipped > 0);
}

#[test]
fn report_runs_the_whole_pipeline() {
    let (code, doc) = run(&["report", &data("fixture_c.toml"), "--tolerance", "1e-9"]);
    assert_eq!(code, 0);
    assert_eq!(doc.unwrap()["options"]["tolerance"], 1e-9);
}

#[test]
fn bad_arguments_and_missing_files_exit_with_two() {
    assert_eq!(run(&["detect", &data("fixture_b.toml"), "--subalgebra", "nope"]).0, 2);
    assert_eq!(run(&["hull", "no/such/file.toml"]).0, 2);
}

#[test]
fn syntax_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "format = \"lcsc/1\"\nkind = = 3\n").unwrap();
    assert_eq!(run(&["validate", path.to_str().unwrap()]).0, 2);
}

#[test]
fn verify_lemmas_on_fixtures_passes() {
    let (code, doc) = run(&["verify-lemmas"]);
    assert_eq!(code, 0);
    assert_eq!(doc.unwrap()["lemmas"]["passed"], true);
}
