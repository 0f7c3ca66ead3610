//! Homogeneous polynomials with exact coefficients, M-convex supports,
//! Lorentzian certification and the derivative atlas.
//!
//! Variables are `w_1..w_n` in display, indices `0..n` in code.

mod atlas;
mod certify;
mod json;
mod polynomial;

use thiserror::Error;

pub use atlas::{lorentzian_atlas, verify_hessian_hyp, word_id, AtlasRoute, HessianHypReport, LorentzianAtlas};
pub use certify::{is_lorentzian, is_m_convex, m_convex_violation, LorentzianReport, LorentzianWitness, MConvexWitness};
pub use json::{polynomial_from_str, polynomial_from_value, polynomial_to_json};
pub use polynomial::{basis_polynomial, euler_identity, hessian, simplex, HomogeneousPolynomial, Monomial, SupportSet};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LorentzianError {
    #[error("term {term}: exponent vector has length {found}, expected {expected}")]
    ExponentLength { term: usize, expected: usize, found: usize },
    #[error("term {term}: total degree {found}, expected {expected}")]
    NotHomogeneous { term: usize, expected: u32, found: u32 },
    #[error("point has {found} coordinates, expected {expected}")]
    PointLength { expected: usize, found: usize },
    #[error("coordinate {0} of the point is not positive")]
    NonPositivePoint(usize),
    #[error("degree {degree} is below the supported minimum {needed}")]
    DegreeTooSmall { degree: u32, needed: u32 },
    #[error("the zero polynomial is not classified")]
    ZeroPolynomial,
    #[error("polynomial is not Lorentzian: {0}")]
    NotLorentzian(String),
}
