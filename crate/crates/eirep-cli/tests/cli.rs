//! End-to-end tests of the `eirep` binary: exit codes, output formats,
//! JSON round-trips and byte-level determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use eirep_cli::doc::{self, OutcomeDoc, QuiverDoc, VerdictDoc};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn eirep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eirep"))
        .args(args)
        .output()
        .expect("failed to spawn eirep")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is not utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is not utf-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process was killed by a signal")
}

#[test]
fn validate_accepts_every_fixture() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let out = eirep(&["validate", "--all", dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("two_object_s3.json: ok"));
    assert!(text.contains("kronecker_collapse.module.json: skipped (not a category document)"));
    assert!(!text.contains("error"));
}

#[test]
fn validate_reports_parse_error_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    fs::write(&path, "{\n  \"schema\": \"eirep/category/v1\",\n").unwrap();
    let out = eirep(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let text = stderr(&out);
    assert!(text.contains("line"), "no location in: {text}");
    assert!(text.contains("column"), "no location in: {text}");
}

#[test]
fn validate_rejects_wrong_schema_for_single_file() {
    let path = fixture("kronecker_collapse.module.json");
    let out = eirep(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let text = stderr(&out);
    assert!(text.contains("eirep/module/v1"), "schema not named in: {text}");
    assert!(text.contains("eirep/category/v1"), "expected schema not named in: {text}");
}

#[test]
fn validate_names_missing_composite() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("open_composition.json");
    fs::write(
        &path,
        r#"{
  "schema": "eirep/category/v1",
  "kind": "explicit",
  "objects": ["x", "y"],
  "morphisms": [
    { "id": "id_x", "src": "x", "tgt": "x" },
    { "id": "id_y", "src": "y", "tgt": "y" },
    { "id": "g", "src": "y", "tgt": "y" },
    { "id": "a", "src": "x", "tgt": "y" }
  ],
  "identities": { "x": "id_x", "y": "id_y" },
  "composition": [["g", "g", "id_y"]]
}
"#,
    )
    .unwrap();
    let out = eirep(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1, "stderr: {}", stderr(&out));
    assert!(
        stderr(&out).contains("missing composite"),
        "unexpected message: {}",
        stderr(&out)
    );
}

#[test]
fn decide_exit_codes_encode_outcome() {
    let finite = fixture("two_object_s3.json");
    let out = eirep(&["decide", finite.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("outcome: finite representation type"));

    let infinite = fixture("free_kronecker.json");
    let out = eirep(&["decide", infinite.to_str().unwrap()]);
    assert_eq!(code(&out), 10, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("outcome: infinite representation type"));

    let open = fixture("sign_action_pair.json");
    let out = eirep(&["decide", open.to_str().unwrap(), "--char", "2"]);
    assert_eq!(code(&out), 20, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("outcome: unknown representation type"));
}

#[test]
fn decide_trace_names_rules_and_citations() {
    let path = fixture("pgroup_pair_regular_c4.json");
    let out = eirep(&["decide", path.to_str().unwrap(), "--char", "2"]);
    assert_eq!(code(&out), 10);
    let text = stdout(&out);
    assert!(text.contains("characteristic: 2"));
    assert!(text.contains("trace:"), "no trace in: {text}");
    // Every trace line is followed by an indented citation line.
    let lines: Vec<&str> = text.lines().collect();
    let rule_lines: Vec<usize> = lines
        .iter()
        .enumerate()
        .filter(|(_, l)| l.starts_with("  ") && !l.starts_with("      "))
        .map(|(i, _)| i)
        .collect();
    assert!(!rule_lines.is_empty());
    for i in rule_lines {
        assert!(
            lines[i + 1].starts_with("      "),
            "rule line without citation: {}",
            lines[i]
        );
    }
}

#[test]
fn decide_json_round_trips_and_is_deterministic() {
    let input = fixture("two_object_s3.json");
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.verdict.json");
    let second = dir.path().join("second.verdict.json");
    let out = eirep(&[
        "decide",
        input.to_str().unwrap(),
        "--json",
        first.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let out = eirep(&[
        "decide",
        input.to_str().unwrap(),
        "--json",
        second.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);

    let bytes = fs::read(&first).unwrap();
    assert_eq!(bytes, fs::read(&second).unwrap(), "verdict output is not deterministic");

    let parsed: VerdictDoc = doc::read_verdict(&first).expect("verdict does not round-trip");
    assert_eq!(parsed.schema, "eirep/verdict/v1");
    assert_eq!(parsed.outcome, OutcomeDoc::Finite);
    assert_eq!(parsed.characteristic, 0);
    assert!(!parsed.trace.is_empty());
    // Re-serializing the parsed document reproduces the file byte for byte.
    assert_eq!(doc::to_json_bytes(&parsed), bytes);
}

#[test]
fn ordinary_quiver_rejects_modular_characteristic() {
    let input = fixture("two_object_s3.json");
    let out = eirep(&["ordinary-quiver", input.to_str().unwrap(), "--char", "2"]);
    assert_eq!(code(&out), 3, "stderr: {}", stderr(&out));
    let text = stderr(&out);
    assert!(text.contains("precondition"), "unexpected message: {text}");
    assert!(text.contains("divides"), "unexpected message: {text}");
}

#[test]
fn ordinary_quiver_exports_graph_edges() {
    let input = fixture("two_object_s3.json");
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("edges.txt");
    let out = eirep(&[
        "ordinary-quiver",
        input.to_str().unwrap(),
        "--graph-out",
        graph.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("field: F_7"));
    assert_eq!(fs::read_to_string(&graph).unwrap(), "0 2\n0 4\n1 3\n1 4\n");
}

#[test]
fn ordinary_quiver_json_is_deterministic() {
    let input = fixture("two_object_s3.json");
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.quiver.json");
    let second = dir.path().join("b.quiver.json");
    for path in [&first, &second] {
        let out = eirep(&[
            "ordinary-quiver",
            input.to_str().unwrap(),
            "--json",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    }
    let bytes = fs::read(&first).unwrap();
    assert_eq!(bytes, fs::read(&second).unwrap(), "quiver output is not deterministic");

    let parsed: QuiverDoc = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(parsed.schema, "eirep/quiver/v1");
    assert_eq!(parsed.characteristic, 7);
    assert_eq!(parsed.field, "F_7");
    let labels: Vec<&str> = parsed.vertices.iter().map(|v| v.label.as_str()).collect();
    assert_eq!(labels, ["x:S0", "x:S1", "y:S0", "y:S1", "y:S2"]);
    let dims: Vec<usize> = parsed.vertices.iter().map(|v| v.dim).collect();
    assert_eq!(dims, [1, 1, 1, 1, 2]);
}

#[test]
fn decide_batch_writes_verdicts_and_skips_non_categories() {
    let dir = tempfile::tempdir().unwrap();
    for name in [
        "two_object_s3.json",
        "free_kronecker.json",
        "kronecker_collapse.module.json",
    ] {
        fs::copy(fixture(name), dir.path().join(name)).unwrap();
    }
    let out = eirep(&["decide", "--all", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("two_object_s3.json: finite"));
    assert!(text.contains("free_kronecker.json: infinite"));
    assert!(text.contains("kronecker_collapse.module.json: skipped (not a category document)"));

    assert!(dir.path().join("two_object_s3.verdict.json").exists());
    assert!(dir.path().join("free_kronecker.verdict.json").exists());
    assert!(!dir.path().join("kronecker_collapse.module.verdict.json").exists());

    // A second run ignores the verdict files it just wrote and reproduces
    // both report and verdicts byte for byte.
    let verdict = fs::read(dir.path().join("two_object_s3.verdict.json")).unwrap();
    let again = eirep(&["decide", "--all", dir.path().to_str().unwrap()]);
    assert_eq!(code(&again), 0);
    assert_eq!(stdout(&again), text);
    assert_eq!(
        fs::read(dir.path().join("two_object_s3.verdict.json")).unwrap(),
        verdict
    );
}

#[test]
fn seed_env_variable_matches_flag() {
    let input = fixture("two_object_s3.json");
    let flagged = eirep(&["decide", input.to_str().unwrap(), "--seed", "123"]);
    assert_eq!(code(&flagged), 0);
    let env = Command::new(env!("CARGO_BIN_EXE_eirep"))
        .args(["decide", input.to_str().unwrap()])
        .env("EIREP_SEED", "123")
        .output()
        .expect("failed to spawn eirep");
    assert_eq!(code(&env), 0);
    assert_eq!(stdout(&flagged), stdout(&env));
}

#[test]
fn induce_collapses_kronecker_module() {
    let out = eirep(&[
        "induce",
        fixture("kronecker_collapse.json").to_str().unwrap(),
        "--subcategory",
        fixture("kronecker_collapse.sub.json").to_str().unwrap(),
        "--module",
        fixture("kronecker_collapse.module.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("field: F_5"), "unexpected output: {text}");
    assert!(text.contains("x: 1"), "unexpected output: {text}");
    assert!(text.contains("y: 0"), "unexpected output: {text}");
    assert!(text.contains("restriction to the subcategory is isomorphic to the input: no"));
}

#[test]
fn induce_fixes_module_over_singleton_pair() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("induced.module.json");
    let out = eirep(&[
        "induce",
        fixture("singleton_c2_pair.json").to_str().unwrap(),
        "--subcategory",
        fixture("singleton_c2_pair.sub.json").to_str().unwrap(),
        "--module",
        fixture("singleton_c2_pair.module.json").to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("field: F_2"), "unexpected output: {text}");
    assert!(text.contains("restriction to the subcategory is isomorphic to the input: yes"));

    let parsed = doc::read_module(&json).unwrap();
    assert_eq!(parsed.characteristic, 2);
    assert_eq!(parsed.dims.get("x"), Some(&1));
    assert_eq!(parsed.dims.get("y"), Some(&1));
}

#[test]
fn info_lists_structure() {
    let out = eirep(&["info", fixture("kronecker_collapse.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("objects: 2"));
    assert!(text.contains("x: |Aut| = 1"));
    assert!(text.contains("y: |Aut| = 2"));
    assert!(text.contains("morphisms: 5"));
    assert!(text.contains("hom(x, y): 2 morphisms"));
    assert!(text.contains("free EI category: yes"));
    assert!(text.contains("a: x -> y"));
}

#[test]
fn missing_file_is_an_io_error() {
    let out = eirep(&["decide", "/nonexistent/path.json"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error:"));
}
