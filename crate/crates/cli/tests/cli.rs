use std::path::Path;
use std::process::{Command, Output};

fn rank3kit(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rank3kit"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn analyze_exported_example_and_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let o = rank3kit(&["--quiet", "example", "affine-g2", "--export", "g2.grp"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    for out in ["a.json", "b.json"] {
        let o = rank3kit(&["analyze", "g2.grp", "--json", out], dir.path());
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.json")).unwrap());
    let v = json(&dir.path().join("a.json"));
    assert_eq!(v["report"]["rank"], 3);
    assert_eq!(v["report"]["class"], "B");
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn family_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let o = rank3kit(&["family", "--family", "d=3,q=4,r=3,gens=phi"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("predicate true, computed rank 3, verdict CONSISTENT"));
}

#[test]
fn sylow_example_reports_discrepancy() {
    let dir = tempfile::tempdir().unwrap();
    let o = rank3kit(&["example", "sylow", "--q", "3"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("stated rank 3; computed rank = 5; DISCREPANCY"));
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(rank3kit(&["--bogus"], dir.path()).status.code(), Some(64));
    assert_eq!(rank3kit(&["analyze"], dir.path()).status.code(), Some(64));
    assert_eq!(rank3kit(&["verify", "--suite", "nope"], dir.path()).status.code(), Some(64));
    assert_eq!(rank3kit(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn malformed_group_file_fails_with_message() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.grp"), "degree 3\n(1,2,2)\n").unwrap();
    let o = rank3kit(&["analyze", "bad.grp"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("repeated point"));
}

#[test]
fn tiny_cap_is_a_capacity_exit() {
    let dir = tempfile::tempdir().unwrap();
    rank3kit(&["example", "affine-g2", "--export", "g2.grp"], dir.path());
    let o = rank3kit(&["--cap-order", "10", "analyze", "g2.grp"], dir.path());
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn catalog_add_verify_and_negative_control() {
    let dir = tempfile::tempdir().unwrap();
    let o = rank3kit(&["catalog", "add", "3.S6-deg18"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let o = rank3kit(&["catalog", "add", "2.M12-deg24", "--order", "95040"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("order: claimed 95040, computed 190080"));
    let cat = json(&dir.path().join("catalog.json"));
    assert_eq!(cat["entries"][0]["name"], "2.M12-deg24");
    assert_eq!(cat["entries"][0]["status"]["state"], "mismatch");
    assert_eq!(cat["entries"][1]["status"]["state"], "verified");

    // A file-backed entry with its own claims.
    rank3kit(&["example", "sum-zero", "--export", "sz.grp"], dir.path());
    let o = rank3kit(
        &["catalog", "add", "sum-zero", "--file", "sz.grp", "--rank", "3", "--class", "C", "--blocks", "4,3"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = rank3kit(&["catalog", "verify", "sum-zero"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let o = rank3kit(&["catalog", "verify"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let o = rank3kit(&["catalog", "list"], dir.path());
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn verify_suite_json_and_seed_independence() {
    let dir = tempfile::tempdir().unwrap();
    for (seed, out) in [("1", "a.json"), ("2", "b.json")] {
        let o = rank3kit(&["--seed", seed, "verify", "--suite", "aut-orbit-table", "--json", out], dir.path());
        assert_eq!(o.status.code(), Some(0));
    }
    let a = json(&dir.path().join("a.json"));
    assert_eq!(a, json(&dir.path().join("b.json")));
    assert_eq!(a["checks"].as_array().unwrap().len(), 6);
}

#[test]
fn autorbits_table() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("z3.tbl"), "order 3\n1 2 3\n2 3 1\n3 1 2\n").unwrap();
    let o = rank3kit(&["autorbits", "z3.tbl"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2 orbits [1, 2]"));
}
