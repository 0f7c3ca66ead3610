//! Exact and floating symmetric linear algebra.
//!
//! Every hyperbolicity question reduces to counting eigenvalue signs. On the
//! rational backend this is done by congruence, so no tolerance is involved.

mod hyperbolic;
mod inertia;
mod jacobi;
mod matrix;
mod scalar;
mod support;

use thiserror::Error;

pub use hyperbolic::{
    check_hyp_pair, check_hyp_pair_with, check_hyp_sampled, check_ndc, check_ndc_with_witness, check_ope, check_ope_with, ndc,
    HypSample, NdcOutcome, DEFAULT_HYP_SAMPLES,
};
pub use inertia::{exact_inertia, float_inertia, inertia, inertia_scaled, inertia_with, Inertia};
pub use jacobi::{jacobi_eigen, jacobi_eigenvalues, Eigen};
pub use matrix::{SquareMatrix, SymmetricMatrix};
pub use scalar::{dot, int, parse_rational, rational, Backend, Rational, Scalar, Tolerance};
pub use support::{irreducible_on_support, support, vector_support, IndexSet};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix has no rows")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("entries ({i},{j}) and ({j},{i}) differ")]
    NotSymmetric { i: usize, j: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}
