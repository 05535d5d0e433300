//! End-to-end CLI tests: exit codes, report schema, determinism.

use std::process::{Command, Output};

fn hibi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hibi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn lattice_report_shape() {
    let out = hibi(&["lattice", "--idn", "2", "4"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "lattice");
    assert_eq!(v["size"], 6);
    assert_eq!(v["dim"], 5);
    assert_eq!(v["maximal_chains"], "2");
}

#[test]
fn sing_lists_all_windows() {
    let out = hibi(&["sing", "--idn", "2", "6"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["window_count"], 3);
    assert_eq!(v["pure_codim3"], true);
    for w in v["windows"].as_array().unwrap() {
        assert_eq!(w["multiplicity"], "2");
        assert_eq!(w["status"], "singular");
        assert_eq!(w["face_dim"], 3);
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["sing", "--idn", "2", "5", "--exhaustive"],
        vec!["counterexample"],
        vec!["hilbert", "--idn", "2", "4", "--format", "md"],
        vec!["faces", "--idn", "2", "4"],
    ] {
        let a = hibi(&args);
        let b = hibi(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn mult_commands() {
    let v = json_of(&hibi(&["mult", "--idn", "3", "6"]));
    assert_eq!(v["multiplicity"], "42");
    assert_eq!(v["agree"], true);

    let v = json_of(&hibi(&["mult", "--window", "2", "5", "1", "1"]));
    assert_eq!(v["multiplicity"], "2");

    let v = json_of(&hibi(&["mult", "--jblock", "8", "1", "1", "--union", "4", "1"]));
    assert_eq!(v["multiplicity"], "25");
}

#[test]
fn counterexample_report() {
    let out = hibi(&["counterexample"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["lattice"]["size"], 12);
    assert_eq!(v["face"]["status"], "singular");
    assert_eq!(v["face"]["interval_criterion"], true);
    assert_eq!(v["face"]["rank"], 5);
    let gens = v["face"]["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 6);
    assert!(gens.contains(&serde_json::json!("e(2,3,4)")));
}

#[test]
fn verify_exit_codes() {
    let out = hibi(&["verify", "--suite", "cone", "--max-size", "8"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["failed"], 0);

    let out = hibi(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hibi(&["mult"]).status.code(), Some(2));
    assert_eq!(hibi(&["lattice"]).status.code(), Some(2));
    assert_eq!(hibi(&["lattice", "--file", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(hibi(&["faces", "--idn", "2", "4", "--face", "not json"]).status.code(), Some(2));
}

#[test]
fn file_input_and_out_flag() {
    let dir = std::env::temp_dir().join("hibi-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("diamond.json");
    std::fs::write(
        &spec,
        r#"{"elements": ["0", "a", "b", "1"],
            "covers": [["a","0"], ["b","0"], ["1","a"], ["1","b"]]}"#,
    )
    .unwrap();
    let report = dir.join("report.json");
    let out = hibi(&[
        "mult",
        "--lattice",
        spec.to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["multiplicity"], "2");
}

#[test]
fn markdown_renders_tables() {
    let out = hibi(&["sing", "--idn", "2", "5", "--format", "md"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# sing"));
    assert!(text.contains("|---|"));
    assert!(text.contains("(1,3)"));
}
