use std::process::{Command, Output};

use serde_json::Value;

fn curvlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn reproduce_skew_operator_reports_rank_sequence() {
    let out = curvlab(&["reproduce", "lemma-4.4", "--s", "2", "--samples", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["holds"], true);
    assert_eq!(v["report"]["power_ranks"], serde_json::json!([4, 2, 0, 0, 0, 0]));
}

#[test]
fn timelike_ip_on_v3s_fails_with_two_witnesses() {
    let out = curvlab(&[
        "check-model",
        "v3s:2",
        "--kind",
        "ip",
        "--causal",
        "timelike",
        "--samples",
        "50",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["holds"], false);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 2);
    assert_eq!(v["seed"], 7);
    // rationals are strings
    assert!(v["witnesses"][0]["frame"][0][0].is_string());
}

#[test]
fn hypersurface_stanilov_holds() {
    let out = curvlab(&[
        "check-metric",
        "gf:x1*x1+x2*x2",
        "--kind",
        "stanilov",
        "--k",
        "2",
        "--causal",
        "spacelike",
        "--points",
        "3",
        "--samples",
        "20",
        "--seed",
        "1",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(json(&out)["points"].as_array().unwrap().len(), 3);
}

#[test]
fn text_format_is_readable() {
    let out = curvlab(&[
        "check-model",
        "v3s:2",
        "--kind",
        "ip",
        "--causal",
        "spacelike",
        "--samples",
        "3",
        "--format",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("spacelike-Jordan-IP: HOLDS"), "{text}");
}

#[test]
fn model_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("curvlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sphere.json");
    std::fs::write(
        &path,
        r#"{"dim": 3, "metric": {"0,0": "1", "1,1": "1", "2,2": "1"},
            "curvature": {"0,1,1,0": "1", "0,2,2,0": "1", "1,2,2,1": "1"}}"#,
    )
    .unwrap();
    let out = curvlab(&[
        "check-model",
        path.to_str().unwrap(),
        "--kind",
        "stanilov",
        "--k",
        "2",
        "--causal",
        "spacelike",
        "--samples",
        "5",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    std::fs::write(
        &path,
        r#"{"dim": 2, "metric": {"0,0": "1", "1,1": "1"}, "curvature": {"0,1,0,1": "1", "1,0,0,1": "1"}}"#,
    )
    .unwrap();
    let out = curvlab(&[
        "check-model",
        path.to_str().unwrap(),
        "--kind",
        "ip",
        "--causal",
        "spacelike",
    ]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec![
            "check-model",
            "v3s:2",
            "--kind",
            "stanilov",
            "--causal",
            "spacelike",
        ],
        vec![
            "check-model",
            "v3s:2",
            "--kind",
            "stanilov",
            "--k",
            "3",
            "--causal",
            "spacelike",
        ],
        vec!["check-model", "v3s:1", "--kind", "ip", "--causal", "spacelike"],
        vec![
            "check-model",
            "nope.json",
            "--kind",
            "ip",
            "--causal",
            "spacelike",
        ],
        vec!["check-metric", "gf:y1", "--kind", "ip", "--causal", "spacelike"],
        vec!["reproduce", "lemma-9.9"],
        vec!["frobnicate"],
    ] {
        let out = curvlab(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}
