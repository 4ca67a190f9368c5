use std::process::Command;

use serde_json::Value;

fn gex(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gex"))
        .args(args)
        .env("GEX_MAX_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (Value, i32) {
    let out = gex(args);
    let v = serde_json::from_slice(&out.stdout).expect("json report");
    (v, out.status.code().unwrap())
}

#[test]
fn identical_config_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = gex(&[
            "verify",
            "--g",
            "2..6",
            "--bound",
            "30",
            "--output",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["canonical", "--g", "2..8", "--format", "csv"];
    let one = Command::new(env!("CARGO_BIN_EXE_gex"))
        .args(args)
        .env("GEX_MAX_THREADS", "1")
        .output()
        .unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_gex"))
        .args(args)
        .env("GEX_MAX_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn verify_passes_with_exit_zero() {
    let (v, code) = report(&["verify", "--g", "2..10"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["status"], "pass");
    assert_eq!(v["summary"]["total"], 90);
}

#[test]
fn empty_range_is_a_vacuous_pass() {
    let (v, code) = report(&["verify", "--g", "5..4"]);
    assert_eq!(code, 0);
    assert_eq!(v["entries"].as_array().unwrap().len(), 0);
    assert_eq!(v["summary"]["status"], "pass");
}

#[test]
fn symmetry_at_genus_three_is_dihedral_of_order_eight() {
    let (v, code) = report(&["symmetry", "--g", "3"]);
    assert_eq!(code, 0);
    let w = &v["entries"][0]["witness"];
    assert_eq!(w["order"], 8);
    assert_eq!(w["check"]["r_order_relation"], true);
    assert_eq!(w["check"]["conjugation_relation"], true);
    let table = w["multiplication_table"].as_array().unwrap();
    assert_eq!(table.len(), 8);
    assert!(table
        .iter()
        .all(|row| row.as_array().unwrap().iter().all(Value::is_u64)));
}

#[test]
fn only_the_meridian_is_exceptional_at_genus_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("slopes.csv");
    let out = gex(&[
        "slopes",
        "--g",
        "2",
        "--bound",
        "100",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    assert_eq!(
        rdr.headers().unwrap(),
        vec!["g", "p", "q", "delta", "length_sq", "verdict"]
    );
    let flagged: Vec<(String, String)> = rdr
        .records()
        .map(|r| r.unwrap())
        .filter(|r| &r[5] != "hyperbolic")
        .map(|r| (format!("{},{}", &r[1], &r[2]), r[5].to_string()))
        .collect();
    assert_eq!(
        flagged,
        [("1,0".to_string(), "exceptional-meridian".to_string())]
    );
}

#[test]
fn volume_csv_reports_the_limit_claim_through_the_exit_code() {
    let out = gex(&["volume", "--g", "10,50", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("g,V_g,vol(M_g),vol(M_g)/g,abs_error_bound\n"));
    assert_eq!(text.lines().count(), 3);
    // vol(M_g)/g decreases over this range, so the increasing-limit claim fails.
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_flags_are_usage_errors() {
    assert_eq!(gex(&["verify", "--g", "1"]).status.code(), Some(2));
    assert_eq!(gex(&["volume", "--tol", "2"]).status.code(), Some(2));
    assert_eq!(gex(&["verify", "--g", "two"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_names_the_path() {
    let out = gex(&["build", "--g", "2", "--output", "/nonexistent-dir/t.json"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent-dir/t.json"));
}

#[test]
fn build_embeds_the_triangulation_document() {
    let (v, code) = report(&["build", "--g", "2"]);
    assert_eq!(code, 0);
    let doc = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["claim"] == "triangulation.build")
        .unwrap();
    assert_eq!(doc["witness"]["schema"], "gex.triangulation");
    assert_eq!(doc["witness"]["tets"].as_array().unwrap().len(), 6);
}
