use std::path::PathBuf;

use serde_json::Value;

pub fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Structural equality where floats may differ by a few ulps across platforms.
pub fn close(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) if x.is_f64() || y.is_f64() => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0)
        }
        (Value::Array(x), Value::Array(y)) => {
            x.len() == y.len() && x.iter().zip(y).all(|(x, y)| close(x, y))
        }
        (Value::Object(x), Value::Object(y)) => {
            x.len() == y.len() && x.iter().all(|(k, v)| y.get(k).is_some_and(|w| close(v, w)))
        }
        _ => a == b,
    }
}

pub fn assert_matches_golden(body: &str, name: &str) {
    assert!(body.ends_with('\n'), "{name}: missing trailing newline");
    let got: Value = serde_json::from_str(body).unwrap();
    let want: Value = serde_json::from_str(&golden(name)).unwrap();
    assert!(close(&got, &want), "{name}:\n got {got}\nwant {want}");
}

/// (golden name, operation, query parameters, equivalent command line)
pub type Case = (
    &'static str,
    &'static str,
    &'static [(&'static str, &'static str)],
    &'static [&'static str],
);

pub const CASES: &[Case] = &[
    (
        "spine_1_1_-1",
        "spine",
        &[("form", "1,1,-1")],
        &["spine", "1,1,-1"],
    ),
    (
        "spine_-14_2_1",
        "spine",
        &[("form", "-14,2,1")],
        &["spine", "-14,2,1"],
    ),
    (
        "geodesic_1_0_-2_h",
        "geodesic",
        &[("form", "1,0,-2"), ("model", "h"), ("samples", "5")],
        &["geodesic", "1,0,-2", "--model", "h", "--samples", "5"],
    ),
    (
        "geodesic_1_0_-2_disk",
        "geodesic",
        &[("form", "1,0,-2"), ("model", "disk"), ("samples", "5")],
        &["geodesic", "1,0,-2", "--model", "disk", "--samples", "5"],
    ),
    (
        "solve_1_0_-2_3",
        "solve",
        &[("form", "1,0,-2"), ("n", "3")],
        &["solve", "1,0,-2", "3"],
    ),
    (
        "solve_1_0_-2_1_count3",
        "solve",
        &[("form", "1,0,-2"), ("n", "1"), ("count", "3")],
        &["solve", "1,0,-2", "1", "--count", "3"],
    ),
    (
        "reduce_gauss_1_-1_-1",
        "reduce",
        &[("form", "1,-1,-1"), ("method", "gauss")],
        &["reduce", "1,-1,-1"],
    ),
    (
        "reduce_cark_5_11_3",
        "reduce",
        &[("form", "5,11,3"), ("method", "cark")],
        &["reduce", "--method", "cark", "5,11,3"],
    ),
    (
        "sunburst_d2_LS",
        "sunburst",
        &[("depth", "2"), ("center", "LS")],
        &["sunburst", "--depth", "2", "--center", "LS"],
    ),
    (
        "cark_-14_2_1_d1",
        "cark",
        &[("form", "-14,2,1"), ("depth", "1")],
        &["cark", "-14,2,1", "--depth", "1"],
    ),
    (
        "classify_1_0_1",
        "classify",
        &[("form", "1,0,1")],
        &["classify", "1,0,1"],
    ),
];
