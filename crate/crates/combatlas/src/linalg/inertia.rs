use serde::Serialize;

use super::jacobi;
use super::matrix::SymmetricMatrix;
use super::scalar::{Rational, Scalar, Tolerance};
use num_traits::{Signed, Zero};

/// Counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn order(&self) -> usize {
        self.n_pos + self.n_neg + self.n_zero
    }
}

/// Inertia with the default tolerance, relative to the matrix's largest entry.
pub fn inertia<T: Scalar>(m: &SymmetricMatrix<T>) -> Inertia {
    inertia_with(m, &Tolerance::default())
}

pub fn inertia_with<T: Scalar>(m: &SymmetricMatrix<T>, tol: &Tolerance) -> Inertia {
    T::inertia_with(m, tol, m.max_abs())
}

/// Inertia with zero threshold `tol.eps * scale` on the float backend.
pub fn inertia_scaled<T: Scalar>(m: &SymmetricMatrix<T>, tol: &Tolerance, scale: f64) -> Inertia {
    T::inertia_with(m, tol, scale)
}

/// Symmetric congruence reduction (Sylvester's law of inertia).
///
/// A nonzero diagonal entry is eliminated as a 1×1 pivot. When the remaining
/// diagonal vanishes but some off-diagonal `a` does not, the block
/// `[[0,a],[a,0]]` is eliminated at once and contributes one positive and one
/// negative eigenvalue.
pub fn exact_inertia(m: &SymmetricMatrix<Rational>) -> Inertia {
    let mut a = m.rows();
    let mut active: Vec<usize> = (0..m.order()).collect();
    let mut out = Inertia::default();
    loop {
        let before = active.len();
        let snapshot = active.clone();
        active.retain(|&i| snapshot.iter().any(|&j| !a[i][j].is_zero()));
        out.n_zero += before - active.len();
        if active.is_empty() {
            return out;
        }
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let p = active.remove(pos);
            let pivot = a[p][p].clone();
            if pivot.is_positive() {
                out.n_pos += 1;
            } else {
                out.n_neg += 1;
            }
            let col: Vec<Rational> = active.iter().map(|&j| a[j][p].clone()).collect();
            for (x, &j) in active.iter().enumerate() {
                if col[x].is_zero() {
                    continue;
                }
                let f = &col[x] / &pivot;
                for (y, &k) in active.iter().enumerate() {
                    if !col[y].is_zero() {
                        a[j][k] = &a[j][k] - &f * &col[y];
                    }
                }
            }
        } else {
            let (pi, qi) = active
                .iter()
                .enumerate()
                .find_map(|(x, &i)| active.iter().skip(x + 1).position(|&j| !a[i][j].is_zero()).map(|y| (x, x + 1 + y)))
                .expect("a nonzero row with zero diagonal has a nonzero off-diagonal entry");
            let p = active[pi];
            let q = active[qi];
            let s = a[p][q].clone();
            active.remove(qi);
            active.remove(pi);
            out.n_pos += 1;
            out.n_neg += 1;
            let cp: Vec<Rational> = active.iter().map(|&j| a[j][p].clone()).collect();
            let cq: Vec<Rational> = active.iter().map(|&j| a[j][q].clone()).collect();
            for (x, &j) in active.iter().enumerate() {
                for (y, &k) in active.iter().enumerate() {
                    if cp[x].is_zero() && cq[x].is_zero() {
                        continue;
                    }
                    let num = &cp[x] * &cq[y] + &cq[x] * &cp[y];
                    if !num.is_zero() {
                        a[j][k] = &a[j][k] - num / &s;
                    }
                }
            }
        }
    }
}

/// Eigenvalue signs from Jacobi, `|λ| <= tol.eps * scale` counted as zero.
pub fn float_inertia(m: &SymmetricMatrix<f64>, tol: &Tolerance, scale: f64) -> Inertia {
    let (eigen, _) = jacobi::rotate(m);
    let threshold = tol.threshold(scale);
    let mut out = Inertia::default();
    for lambda in eigen.values {
        if lambda.abs() <= threshold {
            out.n_zero += 1;
        } else if lambda > 0.0 {
            out.n_pos += 1;
        } else {
            out.n_neg += 1;
        }
    }
    out
}
