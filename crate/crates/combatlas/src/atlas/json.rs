use serde_json::{json, Value};

use super::{Atlas, EdgeTransform};
use crate::io::{matrix_from_value, matrix_to_json, rows_from_json, schema, vector_from_json, vector_to_json, IoError};
use crate::linalg::{Backend, Scalar, SquareMatrix};

pub fn atlas_to_json<T: Scalar>(a: &Atlas<T>) -> Value {
    let vertices: Vec<Value> = a
        .vertices()
        .map(|v| {
            let edges: Vec<Value> = v
                .edges
                .iter()
                .map(|(label, e)| {
                    let transform = match &e.transform {
                        EdgeTransform::Identity => Value::String("identity".into()),
                        EdgeTransform::Dense(t) => json!({ "rows": t.rows().iter().map(|r| vector_to_json(r)).collect::<Vec<_>>() }),
                    };
                    json!({ "label": label, "target": e.target, "transform": transform })
                })
                .collect();
            json!({ "id": v.id, "matrix": matrix_to_json(&v.matrix), "h": vector_to_json(&v.h), "edges": edges })
        })
        .collect();
    json!({ "dimension": a.dimension(), "backend": T::BACKEND, "vertices": vertices })
}

pub fn atlas_from_str<T: Scalar>(text: &str) -> Result<Atlas<T>, IoError> {
    let v: Value = serde_json::from_str(text)?;
    atlas_from_value(&v)
}

pub fn atlas_from_value<T: Scalar>(v: &Value) -> Result<Atlas<T>, IoError> {
    let dimension = v.get("dimension").and_then(Value::as_u64).ok_or_else(|| schema("$.dimension", "expected a positive integer"))? as usize;
    if let Some(b) = v.get("backend") {
        let b: Backend = serde_json::from_value(b.clone()).map_err(|e| schema("$.backend", e.to_string()))?;
        if b != T::BACKEND {
            return Err(schema("$.backend", format!("expected {}, found {b}", T::BACKEND)));
        }
    }
    let vertices = v.get("vertices").and_then(Value::as_array).ok_or_else(|| schema("$.vertices", "expected an array"))?;
    let mut atlas = Atlas::new(dimension);
    for (k, vx) in vertices.iter().enumerate() {
        let path = format!("$.vertices[{k}]");
        let id = vx.get("id").and_then(Value::as_str).ok_or_else(|| schema(format!("{path}.id"), "expected a string"))?;
        let matrix = matrix_from_value::<T>(vx.get("matrix").unwrap_or(&Value::Null), &format!("{path}.matrix"))?;
        let h = vector_from_json::<T>(vx.get("h").unwrap_or(&Value::Null), &format!("{path}.h"))?;
        atlas.insert_vertex(id, matrix, h).map_err(|e| schema(&path, e.to_string()))?;
    }
    for (k, vx) in vertices.iter().enumerate() {
        let id = vx["id"].as_str().expect("checked above");
        let Some(edges) = vx.get("edges") else { continue };
        let edges = edges.as_array().ok_or_else(|| schema(format!("$.vertices[{k}].edges"), "expected an array"))?;
        for (e, ex) in edges.iter().enumerate() {
            let path = format!("$.vertices[{k}].edges[{e}]");
            let label = ex.get("label").and_then(Value::as_u64).ok_or_else(|| schema(format!("{path}.label"), "expected an integer"))? as usize;
            let target = ex.get("target").and_then(Value::as_str).ok_or_else(|| schema(format!("{path}.target"), "expected a string"))?;
            let transform = match ex.get("transform") {
                None => EdgeTransform::Identity,
                Some(Value::String(s)) if s == "identity" => EdgeTransform::Identity,
                Some(t @ Value::Object(_)) => {
                    let rows = rows_from_json::<T>(t.get("rows").unwrap_or(&Value::Null), &format!("{path}.transform.rows"))?;
                    EdgeTransform::Dense(SquareMatrix::from_rows(rows).map_err(|e| schema(format!("{path}.transform"), e.to_string()))?)
                }
                Some(_) => return Err(schema(format!("{path}.transform"), "expected \"identity\" or {\"rows\": ...}")),
            };
            atlas.add_edge(id, label, target, transform).map_err(|e| schema(&path, e.to_string()))?;
        }
    }
    Ok(atlas)
}
