//! End-to-end checks of the command-line interface: verbs, exit codes,
//! fixture bundling and byte-identical reruns.

use assert_cmd::Command;
use predicates::prelude::*;

fn rtorsion() -> Command {
    Command::cargo_bin("rtorsion").unwrap()
}

#[test]
fn torsion_of_unknot_is_one_over_t_minus_one() {
    rtorsion()
        .args(["torsion", "--knot", "unknot.json", "--rep", "trivial-1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("[(1) / (t - 1)]"));
}

#[test]
fn torsion_of_trefoil_shows_alexander_polynomial() {
    let out = rtorsion()
        .args(["torsion", "--knot", "trefoil.json", "--rep", "trivial-1"])
        .assert()
        .success();
    let v: serde_json::Value =
        serde_json::from_slice(&out.get_output().stdout).unwrap();
    let pretty = v["classes"][0]["values"][0]["pretty"].as_str().unwrap();
    assert_eq!(pretty, "[(t^2 - t + 1) / (t - 1)]");
}

#[test]
fn homs_counts_trefoil_onto_a4() {
    let out = rtorsion()
        .args(["homs", "--knot", "trefoil.json", "--group", "A4.json"])
        .assert()
        .success();
    let v: serde_json::Value =
        serde_json::from_slice(&out.get_output().stdout).unwrap();
    assert!(v["count"].as_u64().unwrap() >= 1);
    for c in v["classes"].as_array().unwrap() {
        assert!(c["fills"].as_bool().unwrap());
    }
}

#[test]
fn surgery_on_trefoil_reports_homology_order() {
    let out = rtorsion()
        .args([
            "surgery", "--knot", "trefoil.json", "--slope", "5/1", "--group", "trivial",
            "--rep", "trivial-1",
        ])
        .assert()
        .success();
    let v: serde_json::Value =
        serde_json::from_slice(&out.get_output().stdout).unwrap();
    assert_eq!(v["order"], 5);
    assert_eq!(v["values"].as_array().unwrap().len(), 1);
}

#[test]
fn seifert_example_has_trivial_abelian_torsion() {
    let out = rtorsion()
        .args([
            "seifert", "--params", "3/2,-3,-5", "--group", "trivial", "--rep", "trivial-1",
        ])
        .assert()
        .success();
    let v: serde_json::Value =
        serde_json::from_slice(&out.get_output().stdout).unwrap();
    assert_eq!(v["order"], 6);
    let chars = v["characters"].as_array().unwrap();
    assert_eq!(chars.len(), 2);
    for c in chars {
        assert_eq!(c["values"][0]["pretty"], "[1]");
    }
}

#[test]
fn seifert_accepts_an_explicit_character() {
    rtorsion()
        .args([
            "seifert", "--params", "3/2,-3,-5", "--group", "trivial", "--rep", "trivial-1",
            "--char", "3,2,1,3",
        ])
        .assert()
        .success();
    // a non-surjective exponent tuple is an input error
    rtorsion()
        .args([
            "seifert", "--params", "3/2,-3,-5", "--group", "trivial", "--rep", "trivial-1",
            "--char", "0,0,0,0",
        ])
        .assert()
        .failure()
        .code(1);
}

#[test]
fn exit_codes_match_error_kinds() {
    // 1: parse errors
    rtorsion()
        .args(["torsion", "--knot", "no-such-knot.json", "--rep", "trivial-1"])
        .assert()
        .failure()
        .code(1);
    rtorsion()
        .args([
            "surgery", "--knot", "trefoil.json", "--slope", "4/2", "--group", "trivial",
            "--rep", "trivial-1",
        ])
        .assert()
        .failure()
        .code(1);
    // 2: hypothesis violations (0-surgery has infinite homology)
    rtorsion()
        .args([
            "surgery", "--knot", "trefoil.json", "--slope", "0/1", "--group", "trivial",
            "--rep", "trivial-1",
        ])
        .assert()
        .failure()
        .code(2);
}

#[test]
fn fixtures_are_written_and_reruns_are_byte_identical() {
    let dir = tempdir();
    rtorsion()
        .args(["fixtures", "--dir"])
        .arg(&dir)
        .assert()
        .success();
    for name in ["kt.json", "trefoil.json", "unknot.json", "A4.json", "A5.json"] {
        assert!(dir.join(name).is_file(), "missing fixture {name}");
    }
    // a bundled knot file round-trips through --knot as a path
    let knot_path = dir.join("trefoil.json");
    let run = |out: &std::path::Path| {
        rtorsion()
            .args(["torsion", "--knot"])
            .arg(&knot_path)
            .args(["--rep", "trivial-1", "--json"])
            .arg(out)
            .assert()
            .success();
    };
    let out1 = dir.join("a.json");
    let out2 = dir.join("b.json");
    run(&out1);
    run(&out2);
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
    std::fs::remove_dir_all(&dir).ok();
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("rtorsion-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
