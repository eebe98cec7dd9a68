use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn aqg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aqg")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_pair_groupoid_algebra() {
    let o = aqg(&["verify", path(&fixture("pair2_groupoid_algebra.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("all 31 checks passed"), "{}", stdout(&o));
}

#[test]
fn broken_antipode_fails_with_witness() {
    let o = aqg(&["verify", path(&fixture("broken_antipode.json"))]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("[FAIL] antipode.anti_homomorphism"), "{out}");
    assert!(out.contains("witness:"), "{out}");
}

#[test]
fn dualize_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let (d, g) = (dir.path().join("d.json"), dir.path().join("g.json"));
    let src = fixture("pair2_groupoid_algebra.json");
    let o = aqg(&["dualize", path(&src), "-o", path(&d), "--gram", path(&g)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let dual: Value = serde_json::from_str(&std::fs::read_to_string(&d).unwrap()).unwrap();
    assert_eq!(dual["pairing_gram"].as_array().unwrap().len(), 4);
    assert_eq!(aqg(&["verify", path(&d)]).status.code(), Some(0));
    assert_eq!(aqg(&["pair", path(&src), path(&d), "--form", path(&g)]).status.code(), Some(0));
}

#[test]
fn json_report_is_versioned_and_sorted() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("r.json");
    let o = aqg(&["verify", path(&fixture("broken_antipode.json")), "--json", path(&r)]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&r).unwrap()).unwrap();
    assert_eq!(report["schema"], 1);
    assert!(report["summary"]["failed"].as_u64().unwrap() > 0);
    let ids: Vec<&str> = report["entries"].as_array().unwrap().iter().map(|e| e["check_id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    let failing = report["entries"].as_array().unwrap().iter().find(|e| e["status"] == "fail").unwrap();
    assert!(failing["witness"]["indices"].is_array());
}

#[test]
fn parse_errors_exit_two_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"dim\": 2,\n  \"basis\": [\"a\"\n").unwrap();
    let o = aqg(&["verify", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));

    let o = aqg(&["verify", path(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_of_range_coproduct_index_names_the_entry() {
    let dir = tempfile::tempdir().unwrap();
    let mut j: Value = serde_json::from_str(&std::fs::read_to_string(fixture("pair2_groupoid_algebra.json")).unwrap()).unwrap();
    j["coproduct"][2][1] = 9.into();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, j.to_string()).unwrap();
    let o = aqg(&["verify", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("coproduct[2]"));
}

#[test]
fn build_is_deterministic_and_matches_the_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    for (groupoid, kind, expected) in [
        ("pair2_groupoid.json", "groupoid-algebra", "pair2_groupoid_algebra.json"),
        ("pair2_groupoid.json", "functions", "pair2_function_algebra.json"),
        ("g3_groupoid.json", "groupoid-algebra", "g3_groupoid_algebra.json"),
    ] {
        let out = dir.path().join(expected);
        let o = aqg(&["build", path(&fixture(groupoid)), "--kind", kind, "-o", path(&out)]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(std::fs::read_to_string(&out).unwrap(), std::fs::read_to_string(fixture(expected)).unwrap());
    }
}

#[test]
fn pair_rejects_wrong_shapes_and_flags_scaled_forms() {
    let dir = tempfile::tempdir().unwrap();
    let (a, k) = (fixture("pair2_groupoid_algebra.json"), fixture("pair2_function_algebra.json"));
    let gram = dir.path().join("g.json");
    std::fs::write(&gram, r#"[["1","0"],["0","1"]]"#).unwrap();
    assert_eq!(aqg(&["pair", path(&a), path(&k), "--form", path(&gram)]).status.code(), Some(2));

    let identity = |scale: &str| {
        let rows: Vec<Vec<String>> = (0..4)
            .map(|i| (0..4).map(|j| if i != j { "0" } else if i == 0 { scale } else { "1" }.to_string()).collect())
            .collect();
        serde_json::to_string(&rows).unwrap()
    };
    std::fs::write(&gram, identity("1")).unwrap();
    assert_eq!(aqg(&["pair", path(&a), path(&k), "--form", path(&gram)]).status.code(), Some(0));
    std::fs::write(&gram, identity("2")).unwrap();
    let o = aqg(&["pair", path(&a), path(&k), "--form", path(&gram)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] quotient.t1_t2"));
}

#[test]
fn integrals_json_lists_both_sides() {
    let o = aqg(&["integrals", path(&fixture("pair2_function_algebra.json")), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["integrals"]["left"].as_array().unwrap().len(), 2);
    assert_eq!(v["integrals"]["right"].as_array().unwrap().len(), 2);
    assert_eq!(v["integrals"]["faithfulness"]["faithful"], true);
    assert_eq!(v["report"]["summary"]["failed"], 0);
}

#[test]
fn algebroid_reports_six_quotients() {
    let o = aqg(&["algebroid", path(&fixture("pair2_groupoid_algebra.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let quotients = v["summary"]["quotients"].as_array().unwrap();
    assert_eq!(quotients.len(), 6);
    assert!(quotients.iter().all(|q| q[1] == 8));
    assert!(v["summary"]["canonical_maps"].as_array().unwrap().iter().all(|m| m["bijective"] == true));
}

#[test]
fn commute_check_and_full_report_pass_on_fixtures() {
    for f in ["z2_group_algebra.json", "pair2_groupoid_algebra.json", "pair2_function_algebra.json", "g3_groupoid_algebra.json"] {
        assert_eq!(aqg(&["commute-check", path(&fixture(f))]).status.code(), Some(0), "{f}");
        let o = aqg(&["report", path(&fixture(f))]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stdout(&o));
        assert!(!stdout(&o).contains("skipped"), "{f}");
    }
}

#[test]
fn full_report_skips_downstream_suites_for_a_broken_structure() {
    let o = aqg(&["report", path(&fixture("broken_antipode.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[skip] dual"));
}

#[test]
fn same_input_same_output() {
    let run = || stdout(&aqg(&["report", path(&fixture("g3_function_algebra.json"))]));
    assert_eq!(run(), run());
}
