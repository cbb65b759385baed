use neron_core::graph::DecoratedGraph;
use neron_core::linalg::{FiniteAbelianGroup, IntMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

pub fn group(g: &FiniteAbelianGroup) -> Value {
    json!({
        "invariant_factors": g.invariant_factors().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "order": g.order().map(|o| o.to_string()),
        "exponent": g.exponent().map(|e| e.to_string()),
    })
}

pub fn int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn rational(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.nrows()).map(|i| ints(&m.row(i))).collect())
}

pub fn matrix_text(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.nrows())
        .map(|i| {
            format!(
                "[{}]",
                m.row(i)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn summary(g: &DecoratedGraph) -> Value {
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "betti": g.betti(),
        "genus": g.genus(),
        "stable": g.is_stable(),
    })
}

pub fn summary_text(g: &DecoratedGraph) -> String {
    format!(
        "graph: {} vertices, {} edges, betti {}, genus {}, stable {}",
        g.vertex_count(),
        g.edge_count(),
        g.betti(),
        g.genus(),
        g.is_stable()
    )
}

/// Vertex-id → value listing in vertex order.
pub fn vertex_values(g: &DecoratedGraph, values: &[BigRational]) -> (Value, String) {
    let map: serde_json::Map<String, Value> = g
        .vertices()
        .iter()
        .zip(values)
        .map(|(v, x)| (v.id.clone(), rational(x)))
        .collect();
    let text = g
        .vertices()
        .iter()
        .zip(values)
        .map(|(v, x)| format!("{}={x}", v.id))
        .collect::<Vec<_>>()
        .join(",");
    (Value::Object(map), text)
}
