mod common;

use std::process::{Command, Output};

use common::data;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unavoidable")).args(args).env("UNAVOIDABLE_THREADS", "2").output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn path(rel: &str) -> String {
    data(rel).to_string_lossy().into_owned()
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&["verify", &path("figures/fig1.cert")]), 0);
    assert_eq!(code(&["verify", &path("figures/fig3.cert"), "--color", "blue"]), 0);
    assert_eq!(code(&["verify", &path("figures/missing.cert")]), 3);
    assert_eq!(code(&["verify", &path("figures/fig1.cert"), "--color", "green"]), 3);
    assert_eq!(code(&["frobnicate"]), 3);

    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage.cert");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(code(&["verify", garbage.to_str().unwrap()]), 3);
}

#[test]
fn removing_an_anchor_fails_verification() {
    let text = std::fs::read_to_string(data("figures/fig1.cert")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["points"].as_array_mut().unwrap().retain(|p| p["id"] != "r1.1");
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("fig1_minus.cert");
    std::fs::write(&f, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = run(&["verify", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict: False"));

    let out = run(&["falsify", f.to_str().unwrap(), "--step", "0.05", "--angle-step", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("empty box found"));
}

#[test]
fn falsify_clean_certificate() {
    assert_eq!(code(&["falsify", &path("figures/fig2_blue.cert"), "--step", "0.05", "--angle-step", "5"]), 0);
    assert_eq!(code(&["falsify", &path("figures/fig1.cert"), "--step", "0"]), 3);
}

#[test]
fn prove_and_mutate() {
    let out = run(&["prove", &path("scripts/s22.proof")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("s(22) \u{2265} 5"), "{text}");
    assert!(text.contains("s(22) = 5"), "{text}");

    let out = run(&["prove", &path("scripts/s22.proof"), "--mutate", "line-capacity=5.05"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("line-capacity=5.05"));

    assert_eq!(code(&["prove", &path("scripts/s22.proof"), "--mutate", "no-such-constant=1"]), 3);
    assert_eq!(code(&["prove", &path("scripts/s22.proof"), "--mutate", "line-x"]), 3);
}

#[test]
fn structured_output_is_deterministic() {
    for args in [
        vec!["--format", "structured", "prove", "scripts/s22.proof"],
        vec!["--format", "structured", "verify", "figures/fig3.cert"],
        vec!["--format", "structured", "check-packing", "packings/trivial_22_5.pack"],
        vec!["--format", "structured", "fcurve"],
    ] {
        let args: Vec<String> = args.iter().map(|a| if a.contains('/') { path(a) } else { a.to_string() }).collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = run(&args);
        let b = Command::new(env!("CARGO_BIN_EXE_unavoidable")).args(&args).env("UNAVOIDABLE_THREADS", "1").output().unwrap();
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).expect("structured output is JSON");
        assert!(!v.is_null());
    }
}

#[test]
fn packings_and_rendering() {
    assert_eq!(code(&["check-packing", &path("packings/trivial_33_6.pack")]), 0);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("overlap.pack");
    std::fs::write(
        &bad,
        r#"{"container": "2", "regime": "unit", "squares": [
            {"center": ["1/2", "1/2"], "side": "1"},
            {"center": ["1", "1/2"], "side": "1"}]}"#,
    )
    .unwrap();
    assert_eq!(code(&["check-packing", bad.to_str().unwrap()]), 1);

    let svg = dir.path().join("fig3.svg");
    assert_eq!(code(&["render", &path("figures/fig3.cert"), "--svg", svg.to_str().unwrap()]), 0);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    let regions = dir.path().join("regions.svg");
    assert_eq!(code(&["prove", &path("scripts/s22.proof"), "--svg", regions.to_str().unwrap()]), 0);
    assert_eq!(std::fs::read_to_string(&regions).unwrap().matches("<g id=\"panel").count(), 3);
}
