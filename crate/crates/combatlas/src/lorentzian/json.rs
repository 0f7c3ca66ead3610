use serde_json::{json, Value};

use super::polynomial::HomogeneousPolynomial;
use crate::io::{rational_from_json, schema, IoError};

pub fn polynomial_from_str(text: &str) -> Result<HomogeneousPolynomial, IoError> {
    let v: Value = serde_json::from_str(text)?;
    polynomial_from_value(&v)
}

pub fn polynomial_from_value(v: &Value) -> Result<HomogeneousPolynomial, IoError> {
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| schema("$.n", "expected a nonnegative integer"))? as usize;
    let degree = v.get("degree").and_then(Value::as_u64).ok_or_else(|| schema("$.degree", "expected a nonnegative integer"))? as u32;
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| schema("$.terms", "expected an array"))?;
    let mut parsed = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let path = format!("$.terms[{i}]");
        let coeff = rational_from_json(t.get("coeff").unwrap_or(&Value::Null), &format!("{path}.coeff"))?;
        let exp = t.get("exp").and_then(Value::as_array).ok_or_else(|| schema(format!("{path}.exp"), "expected an array"))?;
        if exp.len() != n {
            return Err(schema(format!("{path}.exp"), format!("expected {n} exponents, found {}", exp.len())));
        }
        let mut m = Vec::with_capacity(n);
        for (j, e) in exp.iter().enumerate() {
            let e = e.as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(|| schema(format!("{path}.exp[{j}]"), "expected a nonnegative integer"))?;
            m.push(e);
        }
        let total: u32 = m.iter().sum();
        if total != degree {
            return Err(schema(format!("{path}.exp"), format!("exponents sum to {total}, degree is {degree}")));
        }
        parsed.push((m, coeff));
    }
    HomogeneousPolynomial::new(n, degree, parsed).map_err(|e| schema("$.terms", e.to_string()))
}

/// Normal form: merged terms with nonzero coefficients, sorted by exponent.
pub fn polynomial_to_json(f: &HomogeneousPolynomial) -> Value {
    let terms: Vec<Value> = f.terms().iter().map(|(m, c)| json!({ "coeff": c.to_string(), "exp": m })).collect();
    json!({ "n": f.variables(), "degree": f.degree(), "terms": terms })
}
