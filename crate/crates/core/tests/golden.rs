use gex_core::build_triangulation;
use gex_core::serialize::{from_json, to_json};

const GOLDEN_G2: &str = include_str!("golden/triangulation_g2.json");

#[test]
fn g2_document_matches_golden_file() {
    let t = build_triangulation(2).unwrap();
    assert_eq!(to_json(&t).unwrap().trim_end(), GOLDEN_G2.trim_end());
}

#[test]
fn golden_file_loads_and_validates() {
    let t = from_json(GOLDEN_G2).unwrap();
    assert_eq!(t, build_triangulation(2).unwrap());
}

#[test]
fn golden_file_encodes_the_even_pairing_rule() {
    // Tet 0 is (v1, v2, p0, p1); its face v1 p0 p1 sits opposite slot 1 and
    // must land on p1 p2 v2 of tet 1 = (v1, v2, p1, p2) with
    // v1 -> p1, p0 -> p2, p1 -> v2.
    let doc: serde_json::Value = serde_json::from_str(GOLDEN_G2).unwrap();
    let gl = &doc["tets"][0]["gluings"][1];
    assert_eq!(gl["tet"], 1);
    assert_eq!(
        doc["tets"][1]["vertices"],
        serde_json::json!(["v1", "v2", "p1", "p2"])
    );
    let perm: Vec<u64> = gl["perm"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!((perm[0], perm[2], perm[3]), (2, 3, 1));
}
