use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn demos() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("demos")
}

fn embcomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_embcomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn demo_files(case: &str) -> (String, String) {
    let d = demos();
    (
        d.join(format!("demo_{case}.manifest.json")).display().to_string(),
        d.join(format!("demo_{case}.trace.jsonl")).display().to_string(),
    )
}

#[test]
fn matrix_rows() {
    let out = embcomp(&["matrix"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "none: juxtaposed");
    assert!(lines[2].starts_with("item-group:") && !lines[2].contains("overloaded"));
    assert!(lines[3].starts_with("item-dimension:") && !lines[3].contains("nested"));
    assert_eq!(lines[1], "item-item: juxtaposed, integrated, superimposed, overloaded, nested");
}

#[test]
fn replay_superimposed_writes_one_spec() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.composite.json");
    let (m, t) = demo_files("superimposed");
    let run = embcomp(&["replay", "--manifest", &m, "--trace", &t, "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    let specs: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let specs = specs.as_array().unwrap();
    assert_eq!(specs.len(), 1);
    assert_eq!(specs[0]["type"], "superimposed");
    let summary = String::from_utf8(run.stdout).unwrap();
    assert_eq!(summary.lines().count(), 1);
}

#[test]
fn replay_twice_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (m, t) = demo_files("nested");
    let paths: Vec<PathBuf> = (0..2).map(|i| dir.path().join(format!("{i}.composite.json"))).collect();
    for p in &paths {
        let run = embcomp(&["replay", "--manifest", &m, "--trace", &t, "--out", p.to_str().unwrap()]);
        assert!(run.status.success());
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
}

#[test]
fn unknown_view_in_trace_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("bad.trace.jsonl");
    std::fs::write(
        &trace,
        "{\"t\":0,\"event\":\"grab\",\"hand\":\"left\",\"target\":{\"view\":\"ghost\",\"part\":\"body\"}}\n",
    )
    .unwrap();
    let (m, _) = demo_files("integrated");
    let run = embcomp(&["replay", "--manifest", &m, "--trace", trace.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(3));
    assert!(String::from_utf8(run.stderr).unwrap().contains("ghost"));
}

#[test]
fn parse_and_validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.manifest.json");
    std::fs::write(&empty, "").unwrap();
    let run = embcomp(&["validate", "--manifest", empty.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));

    let (m, _) = demo_files("integrated");
    let ghost = std::fs::read_to_string(&m)
        .unwrap()
        .replacen("\"table\": \"sugar\"", "\"table\": \"ghost\"", 1);
    let bad = dir.path().join("ghost.manifest.json");
    std::fs::write(&bad, ghost).unwrap();
    let run = embcomp(&["validate", "--manifest", bad.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
    assert!(String::from_utf8(run.stderr).unwrap().contains("views[0].table"));

    assert_eq!(embcomp(&["demo", "--case", "bogus"]).status.code(), Some(2));
    assert_eq!(embcomp(&["replay", "--manifest", &m]).status.code(), Some(2));
}

#[test]
fn thresholds_file_overrides_manifest() {
    let dir = tempfile::tempdir().unwrap();
    // With a tiny link distance the integrated gesture never latches.
    let th = dir.path().join("tight.json");
    std::fs::write(&th, r#"{"linkDistance": 0.01}"#).unwrap();
    let (m, t) = demo_files("integrated");
    let run = embcomp(&["replay", "--manifest", &m, "--trace", &t, "--thresholds", th.to_str().unwrap()]);
    assert!(run.status.success());
    let text = String::from_utf8(run.stdout).unwrap();
    assert_eq!(text.trim(), "[]");

    std::fs::write(&th, r#"{"hysteresis": 0.5}"#).unwrap();
    let run = embcomp(&["replay", "--manifest", &m, "--trace", &t, "--thresholds", th.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn infer_and_validate_report() {
    let (m, t) = demo_files("nested");
    let run = embcomp(&["infer", "--manifest", &m]);
    assert_eq!(
        String::from_utf8(run.stdout).unwrap(),
        "players ~ stats: item-group on players.id = stats.id (inferred)\n"
    );
    let run = embcomp(&["validate", "--manifest", &m, "--trace", &t]);
    assert!(run.status.success());
}

#[test]
fn every_demo_passes() {
    for case in embcomp_cli::demos::CASES {
        let run = embcomp(&["demo", "--case", case]);
        assert_eq!(run.status.code(), Some(0), "{case}");
    }
}
