//! End-to-end tests of the `cayley` binary: exit codes, output formats and
//! byte-for-byte determinism.

use std::io::Write;
use std::process::{Command, Output};

fn cayley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn analyze_reports_the_invariants_of_d8() {
    let out = cayley(&["analyze", "D8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("order: 8"));
    assert!(text.contains("|Z(G)|: 2"));
    assert!(text.contains("|Z2(G)|: 8"));
    assert!(text.contains("|gamma2(G)|: 2"));
    assert!(text.contains("breadth: 2"));
    assert!(text.contains("nilpotency class: 2"));
}

#[test]
fn analyze_of_the_trivial_group_is_all_ones() {
    let out = cayley(&["analyze", "C1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schemaVersion"], "1");
    assert_eq!(doc["order"], 1);
    assert_eq!(doc["centerOrder"], 1);
    assert_eq!(doc["gamma2Order"], 1);
    assert_eq!(doc["nilpotencyClass"], 1);
}

#[test]
fn analyze_of_s4_matches_the_known_profile() {
    let out = cayley(&["analyze", "S4", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["order"], 24);
    assert_eq!(doc["centerOrder"], 1);
    assert_eq!(doc["secondCenterOrder"], 1);
    assert_eq!(doc["gamma2Order"], 12);
    assert_eq!(doc["breadth"], 8);
    assert_eq!(doc["nilpotencyClass"], serde_json::Value::Null);
}

#[test]
fn parse_errors_exit_2() {
    for bad in ["D9", "ES(4,1,+)", "C2 y C3", "nonsense"] {
        let out = cayley(&["analyze", bad]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
        assert!(!out.stderr.is_empty(), "{bad}: diagnostics go to stderr");
    }
}

#[test]
fn order_cap_stops_analyze_with_an_input_error() {
    let out = cayley(&["analyze", "S8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_d8_holds_with_tight_bounds() {
    let out = cayley(&["verify", "D8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("NEUMANN: 4 <= 4 (tight) holds"));
    assert!(text.contains("THEOREM_B: 4 <= 4 (tight) holds"));
    assert!(text.contains("PROPOSITION_2: 4 <= 4 (tight) holds"));
    assert!(text.contains("all hold: yes"));
}

#[test]
fn verify_abelian_group_holds_trivially() {
    let out = cayley(&["verify", "C12", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["allHold"], true);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 7);
}

#[test]
fn verify_s4_carries_its_ingredients() {
    let out = cayley(&["verify", "S4", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = doc["reports"].as_array().unwrap();
    let thm_b = reports
        .iter()
        .find(|r| r["theoremId"] == "THEOREM_B")
        .expect("theorem B report present");
    assert_eq!(thm_b["ingredients"]["n"], "12");
    assert_eq!(thm_b["ingredients"]["t"], "0");
    assert_eq!(thm_b["holds"], true);
}

#[test]
fn verify_accepts_a_subset_of_checks() {
    let out = cayley(&["verify", "D8", "--check", "neumann,theorem-b", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let ids: Vec<&str> = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["theoremId"].as_str().unwrap())
        .collect();
    assert_eq!(ids, vec!["NEUMANN", "THEOREM_B"]);
}

#[test]
fn verify_rejects_unknown_checks() {
    let out = cayley(&["verify", "D8", "--check", "fermat"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn isoclinic_verdicts_and_exit_codes() {
    let out = cayley(&["isoclinic", "D8", "Q8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "ISOCLINIC\n");

    let out = cayley(&["isoclinic", "C4", "C9"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "ISOCLINIC\n");

    let out = cayley(&["isoclinic", "D8", "S3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "NOT_ISOCLINIC\n");

    let out = cayley(&["isoclinic", "S4", "S4", "--search-cap", "8"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout(&out), "INFEASIBLE\n");
}

#[test]
fn isoclinic_witness_is_self_contained() {
    let out = cayley(&["isoclinic", "D8", "Q8", "--emit-witness", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["verdict"], "ISOCLINIC");
    let w = &doc["witness"];
    assert_eq!(w["phi"].as_array().unwrap().len(), 4);
    assert_eq!(w["theta"].as_array().unwrap().len(), 2);
    assert_eq!(w["leftDescriptor"], "D8");
    assert_eq!(w["rightDescriptor"], "Q8");
    assert_eq!(w["verified"], true);
    assert_eq!(w["leftCosetReps"].as_array().unwrap().len(), 4);
    assert_eq!(w["leftGamma2Members"].as_array().unwrap().len(), 2);
}

#[test]
fn emitted_witnesses_reverify_offline() {
    let out = cayley(&["isoclinic", "D8", "Q8", "--emit-witness", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let w = &doc["witness"];
    let elems = |v: &serde_json::Value| -> Vec<u16> {
        v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as u16).collect()
    };
    // rebuild both groups from the embedded descriptors and re-verify
    let left = cayley::catalog::build(
        &cayley::catalog::parse_descriptor(w["leftDescriptor"].as_str().unwrap()).unwrap(),
    )
    .unwrap();
    let right = cayley::catalog::build(
        &cayley::catalog::parse_descriptor(w["rightDescriptor"].as_str().unwrap()).unwrap(),
    )
    .unwrap();
    let witness = cayley::IsoclinismWitness {
        phi: cayley::Morphism { map: elems(&w["phi"]) },
        theta: cayley::Morphism { map: elems(&w["theta"]) },
        verified: false,
    };
    cayley::isoclinism::verify_isoclinism(&left, &right, &witness).unwrap();
}

#[test]
fn stem_reduces_the_padded_dihedral_group() {
    let out = cayley(&["stem", "C2 x D8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["resultOrder"], 8);
    assert_eq!(doc["kernelOrder"], 2);
    assert_eq!(doc["reachedStem"], true);
    assert_eq!(doc["resultIsStem"], true);
}

#[test]
fn stem_is_identity_on_stem_groups() {
    let out = cayley(&["stem", "Q8", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["resultOrder"], 8);
    assert_eq!(doc["kernelOrder"], 1);
    assert_eq!(doc["reachedStem"], true);
}

#[test]
fn survey_of_the_extraspecial_tower_in_csv() {
    let out = cayley(&["survey", "--family", "es", "--p", "3", "--m-max", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("descriptor,order,center,"));
    assert!(lines[1].starts_with("ES(3,1,+),27,3,27,3,"));
    assert!(lines[2].starts_with("ES(3,2,+),243,3,243,3,"));
    assert!(lines[1].contains(",true,"));
}

#[test]
fn survey_of_the_p2_tower() {
    let out = cayley(&["survey", "--family", "es", "--p", "2", "--m-max", "2", "--format", "csv"]);
    let text = stdout(&out);
    assert!(text.contains("ES(2,1,+),8,2,8,2,"));
    assert!(text.contains("ES(2,2,+),32,2,32,2,"));
}

#[test]
fn survey_cap_breach_exits_3() {
    let out = cayley(&[
        "survey", "--family", "es", "--p", "3", "--m-max", "4", "--max-order", "100",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn survey_of_the_small_catalog_has_one_row_per_group() {
    let out = cayley(&["survey", "--family", "catalog", "--max-order", "8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), cayley::catalog::catalog_suite(8).len());
    assert!(rows.iter().any(|r| r.starts_with("D8,8,2,8,2,")));
    assert!(rows.iter().any(|r| r.starts_with("C1,1,1,1,1,")));
}

#[test]
fn byte_identical_output_for_identical_invocations() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["analyze", "ES(3,1,-)", "--format", "json"],
        vec!["verify", "S4", "--format", "json"],
        vec!["isoclinic", "D8", "Q8", "--emit-witness", "--format", "json"],
        vec!["survey", "--family", "catalog", "--max-order", "16", "--format", "csv"],
        vec!["stem", "C2 x D8", "--emit-witness"],
    ];
    for args in cases {
        let a = cayley(&args);
        let b = cayley(&args);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(a.stdout, b.stdout, "{args:?} must be deterministic");
    }
}

#[test]
fn csv_is_rejected_outside_survey() {
    let out = cayley(&["analyze", "D8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_files_round_trip_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d8.tbl");
    let g = cayley::catalog::build(&cayley::catalog::parse_descriptor("D8").unwrap()).unwrap();
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(cayley::io::format_table(&g).as_bytes()).unwrap();
    drop(f);

    let desc = format!("table:{}", path.display());
    let out = cayley(&["analyze", &desc, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["order"], 8);
    assert_eq!(doc["centerOrder"], 2);

    // a corrupted table is an input error
    let bad = dir.path().join("bad.tbl");
    std::fs::write(&bad, "order 2\nmul\n0 1\n1 1\n").unwrap();
    let out = cayley(&["analyze", &format!("table:{}", bad.display())]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tolerance_flag_is_accepted() {
    let out = cayley(&["verify", "S3", "--tolerance", "1e-12"]);
    assert_eq!(out.status.code(), Some(0));
}
