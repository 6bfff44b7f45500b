use descent_web::{action_count, catalog_info, descent_explorer, twist_heatmap};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn catalog_entries() {
    let q8 = parse(catalog_info("Q8").unwrap());
    assert_eq!(q8["order"], 8);
    assert_eq!(q8["center_order"], 2);
    assert_eq!(q8["aut_order"], 24);
    assert!(catalog_info("S9").unwrap_err().contains("S9"));
}

#[test]
fn heatmap_matches_centralizer_counts() {
    let h = parse(twist_heatmap("S3", "C2").unwrap());
    let counts: Vec<Vec<u64>> = serde_json::from_value(h["counts"].clone()).unwrap();
    assert_eq!(counts.len(), 4);
    let canonical = h["canonical"].as_array().unwrap();
    for (i, row) in counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            let expected = match (canonical[i] == canonical[j], i) {
                (false, _) => 0,
                (true, 0) => 6,
                (true, _) => 2,
            };
            assert_eq!(c, expected, "row {i} column {j}");
        }
    }
    assert!(twist_heatmap("S4", "S4").is_err());
}

#[test]
fn explorer_on_s3() {
    assert_eq!(action_count("C3", "C2").unwrap(), 2);
    let e = parse(descent_explorer("C3", "C2", 1).unwrap());
    assert_eq!(e["total"]["isomorphic_to"], "S3");
    let sections = e["sections"].as_array().unwrap();
    assert_eq!(sections.len(), 3);
    assert!(sections
        .iter()
        .all(|s| s["galois"] == false && s["galois_group"] == "C2"));
    assert!(descent_explorer("C3", "C2", 5).is_err());
}
