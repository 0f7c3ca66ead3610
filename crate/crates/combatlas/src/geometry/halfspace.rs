use std::collections::BTreeSet;

use super::GeometryError;

pub const MAX_DIM: usize = 4;
pub const MAX_FACETS: usize = 24;

/// `{x : <u_i, x> <= h_i}` over a list of normals.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfspaceSystem {
    pub normals: Vec<Vec<f64>>,
    pub offsets: Vec<f64>,
}

/// A vertex together with the facets it lies on.
#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub point: Vec<f64>,
    pub tight: Vec<usize>,
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

impl HalfspaceSystem {
    pub fn new(normals: Vec<Vec<f64>>, offsets: Vec<f64>) -> Result<Self, GeometryError> {
        let dim = normals.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(GeometryError::Empty);
        }
        if offsets.len() != normals.len() {
            return Err(GeometryError::OffsetCount { expected: normals.len(), found: offsets.len() });
        }
        for (i, u) in normals.iter().enumerate() {
            if u.len() != dim {
                return Err(GeometryError::NormalLength { index: i, expected: dim, found: u.len() });
            }
            if !(norm(u) > 0.0) || u.iter().any(|x| !x.is_finite()) {
                return Err(GeometryError::ZeroNormal(i));
            }
        }
        if let Some(i) = offsets.iter().position(|x| !x.is_finite()) {
            return Err(GeometryError::NonFiniteOffset(i));
        }
        Ok(HalfspaceSystem { normals, offsets })
    }

    pub fn dim(&self) -> usize {
        self.normals[0].len()
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    /// Rescales every normal to unit length, dividing its offset accordingly.
    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        for (u, h) in out.normals.iter_mut().zip(out.offsets.iter_mut()) {
            let s = norm(u);
            u.iter_mut().for_each(|x| *x /= s);
            *h /= s;
        }
        out
    }

    fn scale(&self) -> f64 {
        self.offsets.iter().fold(1.0f64, |a, h| a.max(h.abs()))
    }

    /// Brute force over all `m`-subsets of facets. Fails when the system has
    /// no vertex or is unbounded.
    pub fn vertices(&self, eps: f64) -> Result<Vec<Vertex>, GeometryError> {
        let m = self.dim();
        let r = self.len();
        let sys = self.normalized();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for subset in subsets(r, m) {
            let rows: Vec<Vec<f64>> = subset.iter().map(|&i| sys.normals[i].clone()).collect();
            let rhs: Vec<f64> = subset.iter().map(|&i| sys.offsets[i]).collect();
            let Some(x) = solve(rows, rhs) else { continue };
            let tol = eps * sys.scale().max(norm(&x));
            let values: Vec<f64> = sys.normals.iter().map(|u| dot(u, &x)).collect();
            if values.iter().zip(&sys.offsets).any(|(v, h)| v - h > tol) {
                continue;
            }
            let tight: Vec<usize> = (0..r).filter(|&k| (values[k] - sys.offsets[k]).abs() <= tol).collect();
            if seen.insert(tight.clone()) {
                out.push(Vertex { point: x, tight });
            }
        }
        if out.is_empty() {
            return Err(GeometryError::NoVertices);
        }
        if let Some(d) = recession_direction(&sys.normals, eps) {
            return Err(GeometryError::Unbounded(d));
        }
        Ok(out)
    }
}

/// A nonzero `d` with `<u_i, d> <= 0` for all `i`, if one exists.
fn recession_direction(normals: &[Vec<f64>], eps: f64) -> Option<Vec<f64>> {
    let m = normals[0].len();
    if m == 1 {
        let has_pos = normals.iter().any(|u| u[0] > 0.0);
        let has_neg = normals.iter().any(|u| u[0] < 0.0);
        return match (has_pos, has_neg) {
            (true, true) => None,
            (true, false) => Some(vec![-1.0]),
            _ => Some(vec![1.0]),
        };
    }
    for subset in subsets(normals.len(), m - 1) {
        let rows: Vec<Vec<f64>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let Some(d) = null_direction(&rows) else { continue };
        for sign in [1.0, -1.0] {
            let d: Vec<f64> = d.iter().map(|x| sign * x).collect();
            if normals.iter().all(|u| dot(u, &d) <= eps) {
                return Some(d);
            }
        }
    }
    None
}

/// Unit vector orthogonal to `m - 1` independent rows in `R^m`.
pub(crate) fn null_direction(rows: &[Vec<f64>]) -> Option<Vec<f64>> {
    let m = rows.len() + 1;
    let basis = gram_schmidt(rows.iter().cloned(), m, 1e-10);
    if basis.len() != m - 1 {
        return None;
    }
    let complement = gram_schmidt(basis.iter().cloned().chain(standard_basis(m)), m, 1e-10);
    complement.get(m - 1).cloned()
}

pub(crate) fn standard_basis(m: usize) -> impl Iterator<Item = Vec<f64>> {
    (0..m).map(move |k| (0..m).map(|j| if j == k { 1.0 } else { 0.0 }).collect())
}

/// Orthonormalizes the candidates in order, skipping near-dependent ones,
/// until `limit` vectors are found.
pub(crate) fn gram_schmidt(candidates: impl IntoIterator<Item = Vec<f64>>, limit: usize, tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for mut v in candidates {
        if basis.len() == limit {
            break;
        }
        let scale = norm(&v);
        for b in &basis {
            let c = dot(&v, b);
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
        let n = norm(&v);
        if n > tol * scale.max(1.0) {
            v.iter_mut().for_each(|x| *x /= n);
            basis.push(v);
        }
    }
    basis
}

/// Gaussian elimination with partial pivoting; `None` when singular.
pub(crate) fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0f64, |s, x| s.max(x.abs()));
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() <= 1e-12 * scale.max(1e-300) {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = ((row + 1)..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
