use super::matrix::SymmetricMatrix;
use super::LinalgError;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and matching unit eigenvectors.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Cyclic Jacobi rotations until the off-diagonal norm falls below
/// `1e-15` times the Frobenius norm.
pub fn jacobi_eigen(m: &SymmetricMatrix<f64>) -> Result<Eigen, LinalgError> {
    let (eigen, converged) = rotate(m);
    if converged {
        Ok(eigen)
    } else {
        Err(LinalgError::NoConvergence { sweeps: MAX_SWEEPS })
    }
}

pub fn jacobi_eigenvalues(m: &SymmetricMatrix<f64>) -> Result<Vec<f64>, LinalgError> {
    jacobi_eigen(m).map(|e| e.values)
}

/// Best available decomposition even when the sweep cap is hit.
pub(crate) fn rotate(m: &SymmetricMatrix<f64>) -> (Eigen, bool) {
    let n = m.order();
    let mut a = m.rows();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let frob: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let target = 1e-15 * frob;
    let mut converged = n <= 1 || frob == 0.0;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum::<f64>().sqrt();
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x][x].total_cmp(&a[y][y]));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = order.iter().map(|&i| (0..n).map(|k| v[k][i]).collect()).collect();
    (Eigen { values, vectors }, converged)
}
