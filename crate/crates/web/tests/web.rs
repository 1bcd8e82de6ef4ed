use serde_json::Value;
use semistab_web::{curve_point, p1_partner, plane_avoid};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn grid_marks_zeros_and_point() {
    let v = parse(plane_avoid("5", "x0*x1 - 1"));
    let zero = v["zero"].as_array().unwrap();
    assert_eq!(zero.len(), 5);
    let count: usize = zero
        .iter()
        .map(|r| r.as_array().unwrap().iter().filter(|b| b.as_bool().unwrap()).count())
        .sum();
    assert_eq!(count, 4);
    let (i, j) = (v["cell"][0].as_u64().unwrap(), v["cell"][1].as_u64().unwrap());
    assert_eq!(zero[j as usize][i as usize], false);
    assert_eq!(v["labels"].as_array().unwrap().len(), 5);
}

#[test]
fn grid_over_f4_uses_symbolic_labels() {
    let v = parse(plane_avoid("2^2", "x0*x1*(x0+x1)"));
    assert_eq!(v["labels"], serde_json::json!(["0", "1", "g", "1+g"]));
    assert_eq!(v["cell"], serde_json::json!([1, 2]));
}

#[test]
fn errors_are_json() {
    assert!(parse(plane_avoid("6", "x0")).get("error").is_some());
    assert!(parse(plane_avoid("67", "x0")).get("error").is_some());
    assert!(parse(curve_point("5", "x0*x1-x2^2", "x0^3")).get("error").is_some());
    assert!(parse(p1_partner("1,,2", 3, 1)).get("error").is_some());
}

#[test]
fn conic_point() {
    let v = parse(curve_point("5", "x0*x1-x2^2", "x0"));
    assert_eq!(v["point_text"], "(1 : 0 : 0)");
    assert_eq!(v["flags"]["on_curve"], true);
}

#[test]
fn partner_lookup() {
    let v = parse(p1_partner("0,0", 2, 1));
    assert_eq!(v["partner"], serde_json::json!([-1]));
    let v = parse(p1_partner("2,0", 4, 3));
    assert_eq!(v["semistable"], false);
    assert_eq!(v["partner"], Value::Null);
}
