use serde_json::{json, Value};

use super::complex::{elements_of, Matroid, SimplicialComplex};
use crate::io::{schema, IoError};

/// How the `sets` of a matroid file are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetKind {
    /// The full face list; must be downward closed.
    Independent,
    /// Maximal faces; expanded downward.
    Bases,
    /// Edges of a simple graph on `n` vertices; faces are forests.
    Graph,
}

pub fn complex_from_str(text: &str) -> Result<SimplicialComplex, IoError> {
    let v: Value = serde_json::from_str(text)?;
    complex_from_value(&v)
}

pub fn complex_from_value(v: &Value) -> Result<SimplicialComplex, IoError> {
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| schema("$.n", "expected a nonnegative integer"))? as usize;
    let kind = match v.get("kind").and_then(Value::as_str) {
        Some("independent") => SetKind::Independent,
        Some("bases") => SetKind::Bases,
        Some("graph") => SetKind::Graph,
        Some(other) => return Err(schema("$.kind", format!("unknown kind {other:?}; expected independent, bases or graph"))),
        None => return Err(schema("$.kind", "expected a string")),
    };
    let sets = v.get("sets").and_then(Value::as_array).ok_or_else(|| schema("$.sets", "expected an array of arrays"))?;
    let mut parsed = Vec::with_capacity(sets.len());
    for (i, s) in sets.iter().enumerate() {
        let path = format!("$.sets[{i}]");
        let items = s.as_array().ok_or_else(|| schema(&path, "expected an array"))?;
        let mut set = Vec::with_capacity(items.len());
        for (j, x) in items.iter().enumerate() {
            let x = x.as_u64().ok_or_else(|| schema(format!("{path}[{j}]"), "expected a nonnegative integer"))? as usize;
            if x >= n {
                return Err(schema(format!("{path}[{j}]"), format!("element {x} outside 0..{n}")));
            }
            if set.contains(&x) {
                return Err(schema(format!("{path}[{j}]"), format!("element {x} repeated")));
            }
            set.push(x);
        }
        parsed.push(set);
    }
    let to_mask = |s: &Vec<usize>| s.iter().fold(0u64, |m, &x| m | 1 << x);
    let built = match kind {
        SetKind::Independent => SimplicialComplex::from_faces(n, parsed.iter().map(to_mask)),
        SetKind::Bases => SimplicialComplex::downward_closure(n, parsed.iter().map(to_mask)),
        SetKind::Graph => {
            let mut edges = Vec::with_capacity(parsed.len());
            for (i, e) in parsed.iter().enumerate() {
                match e.as_slice() {
                    [a, b] => edges.push((*a, *b)),
                    _ => return Err(schema(format!("$.sets[{i}]"), "an edge needs exactly two endpoints")),
                }
            }
            Matroid::graphic(&edges).map(|m| m.complex().clone())
        }
    };
    built.map_err(|e| schema("$.sets", e.to_string()))
}

/// Normal form: kind `independent`, every face listed by size then mask.
pub fn complex_to_json(c: &SimplicialComplex) -> Value {
    let sets: Vec<Vec<usize>> = c.faces().map(elements_of).collect();
    json!({ "n": c.ground_size(), "kind": "independent", "sets": sets })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bases_expand() {
        let c = complex_from_str(r#"{"n": 4, "kind": "bases", "sets": [[0,1],[2,3]]}"#).unwrap();
        assert_eq!(c.independence_profile(), vec![1, 4, 2]);
        let back = complex_from_value(&complex_to_json(&c)).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn graph_kind() {
        let c = complex_from_str(r#"{"n": 4, "kind": "graph", "sets": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#).unwrap();
        assert_eq!(c.independence_profile(), vec![1, 6, 15, 16]);
    }

    #[test]
    fn errors_name_paths() {
        let e = complex_from_str(r#"{"n": 3, "kind": "independent", "sets": [[0,1]]}"#).unwrap_err();
        assert!(e.to_string().contains("not downward closed"), "{e}");
        let e = complex_from_str(r#"{"n": 3, "kind": "bases", "sets": [[0],[1,7]]}"#).unwrap_err();
        assert!(e.to_string().starts_with("$.sets[1][1]"), "{e}");
        let e = complex_from_str(r#"{"n": 3, "kind": "flats", "sets": []}"#).unwrap_err();
        assert!(e.to_string().starts_with("$.kind"), "{e}");
        let e = complex_from_str("{\"n\": 3,\n \"kind\": }").unwrap_err();
        assert!(matches!(e, IoError::Json { line: 2, .. }), "{e}");
    }
}
