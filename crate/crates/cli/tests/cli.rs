use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn homforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homforge")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn same_seed_gives_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("r{i}.json"))).collect();
    for p in &paths {
        let o = homforge(&["verify", "--suite", "antisym", "--q", "7", "--seed", "11", "--out", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let a = fs::read(&paths[0]).unwrap();
    assert_eq!(a, fs::read(&paths[1]).unwrap());
    let other = dir.path().join("other.json");
    homforge(&["verify", "--suite", "antisym", "--q", "7", "--seed", "12", "--out", other.to_str().unwrap()]);
    assert_ne!(a, fs::read(&other).unwrap());
}

#[test]
fn exit_status_tracks_record_status() {
    let ok = homforge(&["verify", "--suite", "milnor", "--q", "5"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert!(v["records"].as_array().unwrap().iter().all(|r| r["status"] == "ok"));

    let bad = homforge(&["verify", "--suite", "prebloch", "--q", "7"]);
    assert_eq!(bad.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&bad)).unwrap();
    assert!(v["records"].as_array().unwrap().iter().any(|r| r["status"] == "fail"));
}

#[test]
fn refusals_still_write_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = homforge(&["verify", "--suite", "step3", "--q", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["records"][0]["status"], "refused");

    let capped = homforge(&["homology", "--kind", "D", "--q", "5", "--degree", "5", "--max-basis", "100"]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));
}

#[test]
fn tsv_has_the_same_fields() {
    let o = homforge(&["verify", "--suite", "milnor", "--q", "7", "--format", "tsv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# config\t"));
    assert_eq!(lines.next().unwrap(), "check\tparams\tstatus\tdetail");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.len() == 4 && r[2] == "ok"));
}

#[test]
fn classify_tables() {
    let o = homforge(&["classify", "--q", "5", "--n", "4", "--degree", "3"]);
    let text = stdout(&o);
    assert!(text.contains("w_1") && text.contains("w_2"));
    let body = |args: &[&str]| -> Vec<String> { stdout(&homforge(args)).lines().skip(1).map(String::from).collect() };
    assert_eq!(
        body(&["classify", "--q", "3", "--degree", "4"]),
        body(&["classify", "--q", "3", "--degree", "4", "--exhaustive"])
    );
}

#[test]
fn homology_with_annotation() {
    let o = homforge(&["homology", "--kind", "D", "--q", "5", "--degree", "1"]);
    assert!(stdout(&o).starts_with("H_1(D_*(F_5^4)) = 0"));
    let o = homforge(&["homology", "--kind", "C", "--q", "5", "--degree", "5", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let recs = v["records"].as_array().unwrap();
    assert!(recs.iter().any(|r| r["check"] == "homology/x-subgroup" && r["status"] == "ok"));
}
