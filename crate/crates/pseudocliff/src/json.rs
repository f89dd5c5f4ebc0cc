//! Deterministic JSON: objects are `BTreeMap`-backed so keys come out sorted,
//! and rationals are strings (`"3"`, `"-1/2"`).

use pseudocliff_core::absring::Polynomial;
use pseudocliff_core::linalg::Matrix;
use pseudocliff_core::multilinear::blade_name;
use pseudocliff_core::pseudobundle::BasePoint;
use pseudocliff_core::Rational;
use serde_json::{json, Value};

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rationals(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(rational).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| rationals(m.row(i))).collect())
}

pub fn polynomial(p: &Polynomial) -> Value {
    Value::String(p.to_string())
}

pub fn base_point(bp: &BasePoint) -> Value {
    json!({ "chart": bp.chart, "point": rationals(&bp.point) })
}

/// `1` for the empty blade, otherwise `e1`, `e12`, …
pub fn blade(mask: u32) -> Value {
    Value::String(blade_name(mask))
}

/// Dense blade coefficients as `[{blade, coeff}]`, zeros omitted.
pub fn blade_terms(dense: &[Rational]) -> Value {
    Value::Array(
        dense
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(m, c)| json!({ "blade": blade_name(m as u32), "coeff": c.to_string() }))
            .collect(),
    )
}

/// Pretty-printed, newline-terminated.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are plain JSON");
    s.push('\n');
    s
}
