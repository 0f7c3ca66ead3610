use std::fmt;

use super::scalar::{dot, Scalar};
use super::LinalgError;

/// Dense symmetric matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct SymmetricMatrix<T> {
    order: usize,
    entries: Vec<T>,
}

impl<T: Scalar> SymmetricMatrix<T> {
    pub fn zeros(order: usize) -> Self {
        SymmetricMatrix { order, entries: vec![T::zero(); order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.entries[i * order + i] = T::one();
        }
        m
    }

    pub fn diagonal(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    /// Builds from the upper triangle of `f(i, j)`, `i <= j`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            for j in i..order {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Validates shape and exact symmetry.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let order = rows.len();
        if order == 0 {
            return Err(LinalgError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(LinalgError::Ragged { row: i, expected: order, found: row.len() });
            }
        }
        for i in 0..order {
            for j in (i + 1)..order {
                if rows[i][j] != rows[j][i] {
                    return Err(LinalgError::NotSymmetric { i, j });
                }
            }
        }
        Ok(SymmetricMatrix { order, entries: rows.into_iter().flatten().collect() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.order + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[j * self.order + i] = v.clone();
        self.entries[i * self.order + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.order).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SymmetricMatrix<U> {
        SymmetricMatrix { order: self.order, entries: self.entries.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> SymmetricMatrix<f64> {
        self.map(|x| x.to_f64())
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.order, "vector length must equal matrix order");
        (0..self.order).map(|i| dot(self.row(i), v)).collect()
    }

    /// The bilinear form `<v, M w>`.
    pub fn form(&self, v: &[T], w: &[T]) -> T {
        dot(v, &self.mul_vec(w))
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.clone() + b.clone()).collect();
        SymmetricMatrix { order: self.order, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.clone() - b.clone()).collect();
        SymmetricMatrix { order: self.order, entries }
    }

    /// Principal submatrix on `indices` (in the given order).
    pub fn restrict(&self, indices: &[usize]) -> Self {
        let k = indices.len();
        let mut m = Self::zeros(k);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                m.entries[a * k + b] = self.get(i, j).clone();
            }
        }
        m
    }

    /// `P M Pᵀ` where row `a` of the result is row `perm[a]` of `M`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.order);
        self.restrict(perm)
    }

    /// `Sᵀ M S`.
    pub fn congruence(&self, s: &SquareMatrix<T>) -> Self {
        assert_eq!(s.order(), self.order);
        let r = self.order;
        let ms: Vec<Vec<T>> = (0..r).map(|j| self.mul_vec(&s.column(j))).collect();
        Self::from_fn(r, |i, j| dot(&s.column(i), &ms[j]))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn determinant(&self) -> T {
        SquareMatrix::from_rows(self.rows()).expect("square").determinant()
    }
}

impl<T: fmt::Debug> fmt::Debug for SymmetricMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            self.entries.chunks(self.order.max(1)).map(|r| r.iter().map(|x| format!("{x:?}")).collect()).collect();
        f.debug_struct("SymmetricMatrix").field("order", &self.order).field("rows", &rows).finish()
    }
}

/// Dense square matrix, used for edge transforms and congruences.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix<T> {
    order: usize,
    entries: Vec<T>,
}

impl<T: Scalar> SquareMatrix<T> {
    pub fn zeros(order: usize) -> Self {
        SquareMatrix { order, entries: vec![T::zero(); order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let order = rows.len();
        if order == 0 {
            return Err(LinalgError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(LinalgError::Ragged { row: i, expected: order, found: row.len() });
            }
        }
        Ok(SquareMatrix { order, entries: rows.into_iter().flatten().collect() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.order + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.order).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.order).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.order, "vector length must equal matrix order");
        (0..self.order).map(|i| dot(self.row(i), v)).collect()
    }

    /// `Tᵀ v`.
    pub fn transpose_mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.order, "vector length must equal matrix order");
        (0..self.order).map(|j| dot(&self.column(j), v)).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.order).all(|i| {
            (0..self.order).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() })
        })
    }

    /// Gaussian elimination with largest-magnitude pivoting.
    pub fn determinant(&self) -> T {
        let n = self.order;
        let mut a = self.rows();
        let mut det = T::one();
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[r][col].is_zero())
                .max_by(|&x, &y| a[x][col].to_f64().abs().total_cmp(&a[y][col].to_f64().abs()));
            let Some(p) = pivot else { return T::zero() };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pv = a[col][col].clone();
            det = det * pv.clone();
            for r in (col + 1)..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone() / pv.clone();
                for c in col..n {
                    let v = a[col][c].clone() * factor.clone();
                    a[r][c] = a[r][c].clone() - v;
                }
            }
        }
        det
    }
}

impl<T: fmt::Debug> fmt::Debug for SquareMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            self.entries.chunks(self.order.max(1)).map(|r| r.iter().map(|x| format!("{x:?}")).collect()).collect();
        f.debug_struct("SquareMatrix").field("order", &self.order).field("rows", &rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{int, Rational};

    fn q(rows: &[&[i64]]) -> SymmetricMatrix<Rational> {
        SymmetricMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn rejects_malformed_rows() {
        let asym = vec![vec![int(0), int(1)], vec![int(2), int(0)]];
        assert!(matches!(SymmetricMatrix::from_rows(asym), Err(LinalgError::NotSymmetric { i: 0, j: 1 })));
        let ragged = vec![vec![int(0), int(1)], vec![int(2)]];
        assert!(matches!(SymmetricMatrix::from_rows(ragged), Err(LinalgError::Ragged { row: 1, .. })));
        assert!(matches!(SymmetricMatrix::<Rational>::from_rows(vec![]), Err(LinalgError::Empty)));
    }

    #[test]
    fn determinant_of_all_ones_pattern() {
        // [[0,1,1],[1,0,1],[1,1,1]]: expand along the first row.
        let b = q(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 1]]);
        assert_eq!(b.determinant(), int(1));
        assert_eq!(q(&[&[0, 2], &[2, 0]]).determinant(), int(-4));
    }

    #[test]
    fn congruence_by_identity_is_noop() {
        let m = q(&[&[1, 2], &[2, -3]]);
        assert_eq!(m.congruence(&SquareMatrix::identity(2)), m);
        let mut s = SquareMatrix::zeros(2);
        s.set(0, 1, int(1));
        s.set(1, 0, int(1));
        assert_eq!(m.congruence(&s), q(&[&[-3, 2], &[2, 1]]));
    }

    #[test]
    fn form_and_restriction() {
        let m = q(&[&[0, 1, 0], &[1, 0, 2], &[0, 2, 5]]);
        assert_eq!(m.form(&[int(1), int(1), int(0)], &[int(0), int(1), int(1)]), int(3));
        assert_eq!(m.restrict(&[2, 1]), q(&[&[5, 2], &[2, 0]]));
    }
}
