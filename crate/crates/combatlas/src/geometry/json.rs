use serde_json::{json, Value};

use super::bricks::{Brick, BrickRegion};
use super::halfspace::HalfspaceSystem;
use crate::io::{rows_from_json, schema, vector_from_json, IoError};

/// Named halfspace systems over one list of normals.
#[derive(Clone, Debug, PartialEq)]
pub struct PolytopeFile {
    pub dim: usize,
    pub normals: Vec<Vec<f64>>,
    pub bodies: Vec<(String, Vec<f64>)>,
}

impl PolytopeFile {
    pub fn system(&self, k: usize) -> HalfspaceSystem {
        HalfspaceSystem { normals: self.normals.clone(), offsets: self.bodies[k].1.clone() }
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.bodies.iter().position(|(n, _)| n == name)
    }
}

pub fn polytope_file_from_str(text: &str) -> Result<PolytopeFile, IoError> {
    let v: Value = serde_json::from_str(text)?;
    polytope_file_from_value(&v)
}

pub fn polytope_file_from_value(v: &Value) -> Result<PolytopeFile, IoError> {
    let dim = v.get("dim").and_then(Value::as_u64).filter(|&d| d >= 1).ok_or_else(|| schema("$.dim", "expected a positive integer"))? as usize;
    let normals: Vec<Vec<f64>> = rows_from_json(v.get("normals").unwrap_or(&Value::Null), "$.normals")?;
    if normals.is_empty() {
        return Err(schema("$.normals", "expected at least one normal"));
    }
    for (i, u) in normals.iter().enumerate() {
        if u.len() != dim {
            return Err(schema(format!("$.normals[{i}]"), format!("expected {dim} coordinates, found {}", u.len())));
        }
        if u.iter().all(|&x| x == 0.0) {
            return Err(schema(format!("$.normals[{i}]"), "normal is zero"));
        }
    }
    let bodies = v.get("bodies").and_then(Value::as_array).ok_or_else(|| schema("$.bodies", "expected an array"))?;
    if bodies.is_empty() {
        return Err(schema("$.bodies", "expected at least one body"));
    }
    let mut out: Vec<(String, Vec<f64>)> = Vec::with_capacity(bodies.len());
    for (k, b) in bodies.iter().enumerate() {
        let path = format!("$.bodies[{k}]");
        let name = b.get("name").and_then(Value::as_str).ok_or_else(|| schema(format!("{path}.name"), "expected a string"))?;
        if out.iter().any(|(n, _)| n == name) {
            return Err(schema(format!("{path}.name"), format!("duplicate body name {name:?}")));
        }
        let offsets: Vec<f64> = vector_from_json(b.get("offsets").unwrap_or(&Value::Null), &format!("{path}.offsets"))?;
        if offsets.len() != normals.len() {
            return Err(schema(format!("{path}.offsets"), format!("expected {} offsets, found {}", normals.len(), offsets.len())));
        }
        out.push((name.to_string(), offsets));
    }
    Ok(PolytopeFile { dim, normals, bodies: out })
}

pub fn polytope_file_to_json(f: &PolytopeFile) -> Value {
    let bodies: Vec<Value> = f.bodies.iter().map(|(n, h)| json!({ "name": n, "offsets": h })).collect();
    json!({ "dim": f.dim, "normals": f.normals, "bodies": bodies })
}

pub fn brick_region_from_str(text: &str) -> Result<BrickRegion, IoError> {
    let v: Value = serde_json::from_str(text)?;
    brick_region_from_value(&v)
}

pub fn brick_region_from_value(v: &Value) -> Result<BrickRegion, IoError> {
    let rows: Vec<Vec<f64>> = rows_from_json(v.get("bricks").unwrap_or(&Value::Null), "$.bricks")?;
    let mut bricks = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let path = format!("$.bricks[{i}]");
        let [x1, x2, y1, y2] = r[..] else { return Err(schema(path, format!("expected [x1, x2, y1, y2], found {} numbers", r.len()))) };
        bricks.push(Brick::new(x1, x2, y1, y2).map_err(|_| schema(&path, "expected x1 < x2 and y1 < y2"))?);
    }
    BrickRegion::new(bricks).map_err(|e| match e {
        super::GeometryError::BadBrick { index, message } => schema(format!("$.bricks[{index}]"), message),
        e => schema("$.bricks", e.to_string()),
    })
}

pub fn brick_region_to_json(r: &BrickRegion) -> Value {
    json!({ "bricks": r.bricks.iter().map(|b| [b.x1, b.x2, b.y1, b.y2]).collect::<Vec<_>>() })
}
