use eposic_demo::{choi_matrix, epsilon_table, positivity, positivity_curve};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).expect("valid JSON")
}

#[test]
fn choi_matrix_shape_and_trace() {
    let v = parse(choi_matrix(1, 2, 1));
    assert_eq!(v["r"], 1);
    assert_eq!(v["trace"], "(2/1)");
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["labels"].as_array().unwrap().len(), 4);
}

#[test]
fn alpha_columns_have_unit_norm() {
    let v = parse(epsilon_table(2, 1, 1));
    let values = v["values"].as_array().unwrap();
    assert!(!values.is_empty());
    // α is an isometry, so Σ_j |ε_i^j|² = 1 for every i.
    let mut norms = std::collections::BTreeMap::<u64, f64>::new();
    for e in values {
        *norms.entry(e["i"].as_u64().unwrap()).or_default() += e["float"].as_f64().unwrap().powi(2);
    }
    assert!(norms.values().all(|x| (x - 1.0).abs() < 1e-12), "{norms:?}");
}

#[test]
fn positivity_verdicts() {
    let v = parse(positivity(1, "1/3"));
    assert_eq!(v["is_positive"], true);
    assert_eq!(v["is_cp"], false);
    assert_eq!(v["witness_eigenvalue"], "(-2/3)");
    let v = parse(positivity(2, "1/2"));
    assert_eq!(v["is_positive"], false);
    assert!(parse(positivity(1, "1/0"))["error"].is_string());
    assert!(parse(positivity(0, "1/3"))["error"].is_string());
}

#[test]
fn curve_changes_sign_at_threshold() {
    let points = parse(positivity_curve(2, 8));
    let points = points.as_array().unwrap();
    assert_eq!(points.len(), 9);
    for p in points {
        let a = p["alpha_float"].as_f64().unwrap();
        assert_eq!(p["is_positive"].as_bool().unwrap(), a <= 0.25 + 1e-15, "α = {a}");
        assert_eq!(p["min_diagonal"].as_f64().unwrap() >= -1e-15, a <= 0.25 + 1e-15);
    }
    assert!(parse(positivity_curve(2, 0))["error"].is_string());
}

#[test]
fn out_of_range_indices_are_errors() {
    assert!(parse(choi_matrix(1, 1, 2))["error"].is_string());
    assert!(parse(epsilon_table(9, 1, 0))["error"].is_string());
}
