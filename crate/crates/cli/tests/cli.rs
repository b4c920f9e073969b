use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn satlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satlab"))
        .args(args)
        .env_remove("SATLAB_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Writes every saturated system of `group` to its own file.
fn saturated_files(dir: &Path, group: &str) -> Vec<std::path::PathBuf> {
    let out = satlab(&["enumerate-ts", "--group", group, "--saturated"]);
    assert_eq!(code(&out), 0);
    json(&out)
        .as_array()
        .unwrap()
        .iter()
        .enumerate()
        .map(|(i, ts)| {
            let p = dir.join(format!("{group}-{i}.json"));
            std::fs::write(&p, ts.to_string()).unwrap();
            p
        })
        .collect()
}

#[test]
fn realize_maximal_on_c35() {
    let out = satlab(&["realize", "--group", "C35", "--ts", "maximal"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["group"], "C35");
    // the maximal system on C35 is realized by the full character group
    assert_eq!(v["universe"]["chars"].as_array().unwrap().len(), 35);
}

#[test]
fn realize_every_saturated_system_from_files() {
    let dir = tempfile::tempdir().unwrap();
    for p in saturated_files(dir.path(), "C25") {
        let out = satlab(&["realize", "--group", "C25", "--ts", p.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn brute_check_finds_an_unrealizable_system_on_c15() {
    let dir = tempfile::tempdir().unwrap();
    let codes: Vec<i32> = saturated_files(dir.path(), "C15")
        .iter()
        .map(|p| code(&satlab(&["brute-check", "--group", "C15", "--ts", p.to_str().unwrap(), "--jobs", "2"])))
        .collect();
    assert!(codes.iter().all(|&c| c == 0 || c == 1));
    assert_eq!(codes.iter().filter(|&&c| c == 1).count(), 1);
}

#[test]
fn verify_negative_reports_unrealizable() {
    let out = satlab(&["verify-negative", "--p", "2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["unrealizable"], true);
    assert_eq!(v["universes_searched"], 128);
    assert_eq!(code(&satlab(&["verify-negative", "--p", "5"])), 2);
}

#[test]
fn exit_codes_for_bad_input_and_budgets() {
    assert_eq!(code(&satlab(&["stats", "--group", "C1"])), 2);
    assert_eq!(code(&satlab(&["stats", "--group", "D8"])), 2);
    assert_eq!(code(&satlab(&["realize", "--group", "C5", "--ts", "/nonexistent.json"])), 2);
    // K -> H without the intermediate edges is not saturated
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c8.json");
    std::fs::write(&p, r#"{"group": "C8", "edges": [[0, 1], [0, 2]]}"#).unwrap();
    let out = satlab(&["realize", "--group", "C8", "--ts", p.to_str().unwrap()]);
    assert_eq!(code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(code(&satlab(&["brute-check", "--group", "C7xC7", "--ts", "maximal", "--budget", "5"])), 3);
    assert_eq!(code(&satlab(&["enumerate-ts", "--group", "C2xC2xC2"])), 3);
    assert_eq!(code(&satlab(&["export-dot", "--group", "C4", "--format", "csv"])), 2);
}

#[test]
fn tight_pairs_and_their_tensor_product() {
    let out = satlab(&["tight-pair", "cyclic", "--p", "5", "--n", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["group"], "C25");
    assert_eq!(code(&satlab(&["tight-pair", "cyclic", "--p", "3", "--n", "1"])), 2);
    assert_eq!(code(&satlab(&["tight-pair", "rank2", "--group", "C35"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let file = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    for p in ["5", "7"] {
        let out = satlab(&["tight-pair", "cyclic", "--p", p, "--group", "C35", "--out", &file(p)]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
    }
    let out = satlab(&["tight-pair", "tensor", "--inputs", &file("5"), &file("7"), "--out", &file("tp.json")]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(file("tp.json")).unwrap()).unwrap();
    assert_eq!(v["scope"], 3);

    // the product realizes the identity system through a file-supplied pair
    let out = satlab(&["realize", "--group", "C35", "--ts", "identity", "--tight-pair", &file("tp.json")]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    // mismatched groups are an input error
    let out = satlab(&["tight-pair", "cyclic", "--p", "5", "--n", "1", "--out", &file("c5.json")]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&satlab(&["tight-pair", "tensor", "--inputs", &file("5"), &file("c5.json")])), 2);
}

#[test]
fn rank_two_runs_are_deterministic_and_report_failures() {
    let a = satlab(&["tight-pair", "rank2", "--group", "C5xC5", "--seed", "7", "--retries", "4"]);
    let b = Command::new(env!("CARGO_BIN_EXE_satlab"))
        .args(["tight-pair", "rank2", "--group", "C5xC5", "--retries", "4"])
        .env("SATLAB_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 7);
    match code(&a) {
        0 => assert!(v["pair"].is_object()),
        1 => assert!(v["failed_stage"].is_u64() && !v["stages"].as_array().unwrap().is_empty()),
        c => panic!("unexpected exit code {c}"),
    }
}

#[test]
fn census_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.csv");
    let out = satlab(&["census", "--group", "C4,C2xC2", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "group,subgroups,transfer_systems,saturated,orbits,universes,realized_saturated,unrealized_saturated,distinct_tr"
    );
    assert_eq!(lines[1], "C4,3,5,4,2,4,4,0,4");
    assert_eq!(lines[2], "C2xC2,5,19,12,3,8,6,6,6");
    let out = satlab(&["census", "--group", "C4", "--format", "json"]);
    assert_eq!(json(&out)[0]["saturated"], 4);
}

#[test]
fn dot_export_is_stable_and_marks_transfers() {
    let a = satlab(&["export-dot", "--group", "C2xC2", "--ts", "maximal"]);
    let b = satlab(&["export-dot", "--group", "C2xC2", "--ts", "maximal"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.matches("[label=").count(), 5);
    assert!(text.contains("class=\"transfer\""));
    let lattice = satlab(&["lattice", "--group", "C4", "--format", "dot"]);
    assert!(String::from_utf8(lattice.stdout).unwrap().contains("n0 -> n1;"));
}

#[test]
fn count_saturated_agrees_both_ways() {
    let v = json(&satlab(&["count-saturated", "--group", "C2xC2"]));
    assert_eq!(v["saturated"], 12);
    assert_eq!(v["saturated_by_filter"], 12);
    let v = json(&satlab(&["count-saturated", "--group", "C2xC2xC2"]));
    assert_eq!(v["saturated"], 3616);
    assert!(v["saturated_by_filter"].is_null());
}
