//! End-to-end tests of the `cdc` binary: output values, exit codes,
//! manifest round trips and output determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn cdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn bounds_prints_the_pinned_value() {
    let out = cdc(&["bounds", "--q", "2", "--n", "5", "--t", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("1074029925"));
    assert!(text.contains("q^30"));
}

#[test]
fn bounds_rejects_violated_hypotheses_with_exit_2() {
    let out = cdc(&["bounds", "--q", "2", "--n", "18", "--t", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("q^{2t} >= s"), "diagnostic missing: {err}");
}

#[test]
fn bounds_json_is_machine_readable() {
    let out = cdc(&["bounds", "--q", "3", "--n", "5", "--t", "2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["cardinality"], "205891525289719");
}

#[test]
fn table5_passes_with_twelve_rows() {
    let out = cdc(&["table5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches(" ok").count(), 12);
    assert!(text.contains("302231473001706877649153"));
}

#[test]
fn onefact_emits_a_partition() {
    let out = cdc(&["onefact", "--m", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    let mut all = std::collections::HashSet::new();
    for line in &lines {
        let vecs: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(vecs.len(), 2);
        for v in vecs {
            assert_eq!(v.len(), 4);
            assert_eq!(v.chars().filter(|&c| c == '1').count(), 2);
            assert!(all.insert(v.to_string()));
        }
    }
    assert_eq!(all.len(), 6);
}

#[test]
fn skeleton_lists_entries_with_pending_specs() {
    let out = cdc(&["skeleton", "--q", "2", "--n", "5", "--t", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 16); // header + 15 entries
    assert!(text.contains("pending 2x4"));
    assert!(text.contains("pending 2x2"));
}

#[test]
fn identical_argv_gives_identical_stdout() {
    for args in [
        vec!["bounds", "--q", "4", "--n", "6", "--t", "2"],
        vec!["skeleton", "--q", "3", "--explicit", "19"],
        vec!["onefact", "--m", "7"],
    ] {
        let a = stdout(&cdc(&args));
        let b = stdout(&cdc(&args));
        assert_eq!(a, b, "non-deterministic output for {args:?}");
    }
}

#[test]
fn fdrmc_modes() {
    let out = cdc(&[
        "fdrmc",
        "--cols",
        "2,3,4,5,6,6",
        "--delta",
        "4",
        "--q",
        "2",
        "--mode",
        "bound",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("= 9"));

    let out = cdc(&[
        "fdrmc",
        "--cols",
        "2,3,4,5,6,6",
        "--delta",
        "4",
        "--q",
        "2",
        "--mode",
        "plan",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("stcons"), "{}", stdout(&out));

    let out = cdc(&[
        "fdrmc", "--cols", "1,2", "--delta", "2", "--q", "2", "--mode", "oracle",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("= 1"));

    let out = cdc(&[
        "fdrmc",
        "--cols",
        "2,2,4,4,6,6",
        "--delta",
        "4",
        "--q",
        "2",
        "--mode",
        "construct",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("achieved dimension 8"), "{text}");
    assert!(text.contains("min rank (exact): 4"), "{text}");

    // bad diagram literal
    let out = cdc(&[
        "fdrmc", "--cols", "3,2", "--delta", "2", "--q", "2", "--mode", "bound",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_then_verify_manifest_roundtrip() {
    let dir = std::env::temp_dir().join(format!("cdc-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let plan: PathBuf = dir.join("plan_2_5_2.json");
    let out = cdc(&[
        "build",
        "--q",
        "2",
        "--n",
        "5",
        "--t",
        "2",
        "--out",
        plan.to_str().unwrap(),
        "--dump-bases",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("promised cardinality: 1074029925"));
    assert!(text.contains("achieved cardinality: 1074029925"));
    assert!(text.contains("gaps: none"));

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&plan).unwrap()).unwrap();
    assert_eq!(manifest["entries"].as_array().unwrap().len(), 15);
    assert_eq!(manifest["promised_cardinality"], "1074029925");

    // dumped bases exist and carry the header format
    let bases = dir.join("plan_2_5_2_bases");
    let entry0 = std::fs::read_to_string(bases.join("entry_000.txt")).unwrap();
    assert!(
        entry0.starts_with("30 6 10 2 4\n"),
        "basis dump header: {entry0}"
    );

    // verification driven from the manifest
    let out = cdc(&[
        "verify",
        "--in",
        plan.to_str().unwrap(),
        "--mode",
        "consistency",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("all checks passed"));

    // a corrupted manifest is invalid input (exit 2)
    let mut broken: serde_json::Value = manifest;
    broken["promised_cardinality"] = serde_json::Value::String("1".into());
    let bad = dir.join("broken.json");
    std::fs::write(&bad, serde_json::to_string(&broken).unwrap()).unwrap();
    let out = cdc(&[
        "verify",
        "--in",
        bad.to_str().unwrap(),
        "--mode",
        "consistency",
    ]);
    assert_eq!(out.status.code(), Some(2));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_table5_mode_needs_no_params() {
    let out = cdc(&["verify", "--mode", "table5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("all checks passed"));
}

#[test]
fn verify_skeleton_explicit_targets() {
    for l in ["17", "18", "19"] {
        let out = cdc(&["verify", "--q", "2", "--explicit", l, "--mode", "skeleton"]);
        assert!(out.status.success(), "explicit {l} skeleton failed");
    }
}

#[test]
fn verify_cross_small_sample() {
    let out = cdc(&[
        "verify",
        "--q",
        "2",
        "--n",
        "5",
        "--t",
        "2",
        "--mode",
        "cross",
        "--samples",
        "2000",
        "--seed",
        "7",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(
        text.contains("sampled-pass (samples=2000, seed=7)"),
        "{text}"
    );
}
