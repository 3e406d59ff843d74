use serde_json::Value;
use zdlab_demo::{graph, random_semigroup, summary};

#[test]
fn boolean_summary_lists_properties() {
    let v: Value = serde_json::from_str(&summary("@boolean").unwrap()).unwrap();
    assert_eq!(v["kind"], "semiring");
    let props = v["properties"].as_array().unwrap();
    let reversible = props.iter().find(|p| p["property"] == "reversible").unwrap();
    assert_eq!(reversible["verdict"], "holds");
}

#[test]
fn graph_of_z8_is_connected() {
    let v: Value = serde_json::from_str(&graph("@z:8", "calibrated").unwrap()).unwrap();
    assert_eq!(v["connected"], true);
    assert!(v["dot"].as_str().unwrap().starts_with("digraph"));
    assert!(graph("@z:8", "sideways").is_err());
}

#[test]
fn random_semigroups_reload() {
    let text = random_semigroup(4, 3).unwrap();
    assert_eq!(text, random_semigroup(4, 3).unwrap());
    let v: Value = serde_json::from_str(&summary(&text).unwrap()).unwrap();
    assert_eq!(v["order"], 4);
}

#[test]
fn bad_input_is_reported() {
    assert!(summary("@nothing").is_err());
    assert!(summary("{").is_err());
}
