//! JSON encoding shared by every file format.
//!
//! Rationals travel as canonical `"p/q"` strings, floats as numbers.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::linalg::{parse_rational, Backend, Rational, Scalar, SymmetricMatrix};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(cut) => message[..cut].to_string(),
            None => message,
        };
        IoError::Json { line: e.line(), column: e.column(), message }
    }
}

pub fn schema(path: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Schema { path: path.into(), message: message.into() }
}

pub fn scalar_to_json<T: Scalar>(x: &T) -> Value {
    match x.to_rational() {
        Some(r) => Value::String(r.to_string()),
        None => serde_json::Number::from_f64(x.to_f64()).map(Value::Number).unwrap_or(Value::Null),
    }
}

pub fn scalar_from_json<T: Scalar>(v: &Value, path: &str) -> Result<T, IoError> {
    match (T::BACKEND, v) {
        (_, Value::String(s)) => {
            let r = parse_rational(s).map_err(|e| schema(path, e.to_string()))?;
            Ok(T::from_rational(&r))
        }
        (Backend::Rational, Value::Number(n)) => {
            let r = parse_rational(&n.to_string()).map_err(|e| schema(path, e.to_string()))?;
            Ok(T::from_rational(&r))
        }
        (Backend::Float, Value::Number(n)) => match n.as_f64() {
            Some(x) if x.is_finite() => Ok(T::from_f64_approx(x)),
            _ => Err(schema(path, "expected a finite number")),
        },
        _ => Err(schema(path, "expected a number or a rational string")),
    }
}

/// Serde helper: a rational as its canonical string.
pub fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub fn serialize_rationals<S: serde::Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(|r| r.to_string()))
}

pub fn serialize_opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

pub fn serialize_matrix<S: serde::Serializer, T: Scalar>(m: &SymmetricMatrix<T>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(m.rows().iter().map(|r| vector_to_json(r)))
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<Rational, IoError> {
    scalar_from_json::<Rational>(v, path)
}

pub fn vector_to_json<T: Scalar>(v: &[T]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn vector_from_json<T: Scalar>(v: &Value, path: &str) -> Result<Vec<T>, IoError> {
    let items = v.as_array().ok_or_else(|| schema(path, "expected an array"))?;
    items.iter().enumerate().map(|(i, x)| scalar_from_json(x, &format!("{path}[{i}]"))).collect()
}

pub fn rows_from_json<T: Scalar>(v: &Value, path: &str) -> Result<Vec<Vec<T>>, IoError> {
    let rows = v.as_array().ok_or_else(|| schema(path, "expected an array of rows"))?;
    rows.iter().enumerate().map(|(i, row)| vector_from_json(row, &format!("{path}[{i}]"))).collect()
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    order: usize,
    rows: Value,
    #[serde(default)]
    backend: Option<Backend>,
}

pub fn matrix_to_json<T: Scalar>(m: &SymmetricMatrix<T>) -> Value {
    let rows = Value::Array(m.rows().iter().map(|r| vector_to_json(r)).collect());
    serde_json::to_value(MatrixDoc { order: m.order(), rows, backend: Some(T::BACKEND) }).expect("serializable")
}

pub fn matrix_from_value<T: Scalar>(v: &Value, path: &str) -> Result<SymmetricMatrix<T>, IoError> {
    let doc: MatrixDoc = serde_json::from_value(v.clone()).map_err(|e| schema(path, e.to_string()))?;
    if let Some(b) = doc.backend {
        if b != T::BACKEND {
            return Err(schema(format!("{path}.backend"), format!("expected {}, found {b}", T::BACKEND)));
        }
    }
    let rows = rows_from_json(&doc.rows, &format!("{path}.rows"))?;
    if rows.len() != doc.order {
        return Err(schema(format!("{path}.rows"), format!("{} rows for order {}", rows.len(), doc.order)));
    }
    SymmetricMatrix::from_rows(rows).map_err(|e| schema(path, e.to_string()))
}

pub fn matrix_from_str<T: Scalar>(text: &str) -> Result<SymmetricMatrix<T>, IoError> {
    let v: Value = serde_json::from_str(text)?;
    matrix_from_value(&v, "$")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rational};

    #[test]
    fn rational_matrix_round_trip() {
        let m = SymmetricMatrix::from_rows(vec![vec![rational(2, 4), int(1)], vec![int(1), int(0)]]).unwrap();
        let v = matrix_to_json(&m);
        assert_eq!(v["rows"][0][0], "1/2");
        assert_eq!(v["backend"], "rational");
        assert_eq!(matrix_from_value::<Rational>(&v, "$").unwrap(), m);
    }

    #[test]
    fn float_matrix_accepts_strings_and_numbers() {
        let m: SymmetricMatrix<f64> = matrix_from_str(r#"{"order":2,"rows":[[1.5,"1/2"],[0.5,0]],"backend":"float"}"#).unwrap();
        assert_eq!(*m.get(0, 1), 0.5);
    }

    #[test]
    fn errors_carry_positions() {
        let err = matrix_from_str::<Rational>("{\"order\": 2,\n \"rows\": [[1,2],[3]").unwrap_err();
        assert!(matches!(err, IoError::Json { line: 2, .. }), "{err}");
        let err = matrix_from_str::<Rational>(r#"{"order":2,"rows":[[1,2],[3,"x"]]}"#).unwrap_err();
        assert_eq!(err.to_string(), "$.rows[1][1]: invalid rational literal \"x\"");
        let err = matrix_from_str::<Rational>(r#"{"order":2,"rows":[[1,2],[3,1]]}"#).unwrap_err();
        assert!(err.to_string().contains("differ"));
    }
}
