//! Simple polytopes given by support vectors over a shared list of unit
//! normals: vertex enumeration, facet recursion for mixed volumes, the
//! mixed volume matrix and its atlas, a perturbation bridge to strongly
//! isomorphic families, and planar brick regions.
//!
//! All geometry is `f64`; incidence tests use a tolerance relative to the
//! size of the data.

mod af;
mod atype;
mod bricks;
mod halfspace;
mod json;
mod mixed;
mod perturb;
mod polygon;

use thiserror::Error;

pub use af::{af_atlas, af_check_options, sink_id, verify_af, verify_af_with, AfAtlas, AfAtlasRoute, AfReport};
pub use atype::{family_atype, AType, FacetType, PolytopeFamily};
pub use bricks::{bm_split_trace, bm_verify, brick_area, brick_minkowski_sum, Axis, BmReport, Brick, BrickRegion, SplitNode, SplitStep, BM_TOL};
pub use halfspace::{HalfspaceSystem, Vertex, MAX_DIM, MAX_FACETS};
pub use json::{
    brick_region_from_str, brick_region_from_value, brick_region_to_json, polytope_file_from_str, polytope_file_from_value, polytope_file_to_json,
    PolytopeFile,
};
pub use mixed::{facet_balance, facet_mixed_volume, mixed_volume, mv_identities, mv_matrix, volume, MvIdentityReport, MV_IDENTITY_TOL};
pub use perturb::{perturb_family, PerturbInfo, PerturbOptions};
pub use polygon::{minkowski_sum, polygon_mixed_area, polygon_vertices, shoelace, PolygonMixedArea};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("no normals given")]
    Empty,
    #[error("expected {expected} offsets, found {found}")]
    OffsetCount { expected: usize, found: usize },
    #[error("normal {index} has {found} coordinates, expected {expected}")]
    NormalLength { index: usize, expected: usize, found: usize },
    #[error("normal {0} is zero or not finite")]
    ZeroNormal(usize),
    #[error("offset {0} is not finite")]
    NonFiniteOffset(usize),
    #[error("dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no vertices: the system is empty or not full-dimensional")]
    NoVertices,
    #[error("unbounded in direction {0:?}")]
    Unbounded(Vec<f64>),
    #[error("not simple: vertex {point:?} lies on facets {facets:?}")]
    NotSimple { point: Vec<f64>, facets: Vec<usize> },
    #[error("facet {0} is empty")]
    EmptyFacet(usize),
    #[error("vertex-facet structure differs from the a-type")]
    AdjacencyMismatch,
    #[error("body {body} is not strongly isomorphic to body {reference}")]
    Mismatch { body: String, reference: String },
    #[error("body {body}: {error}")]
    Body { body: String, error: Box<GeometryError> },
    #[error("{dim} dimensions and {facets} facets exceed the brute-force limits ({MAX_DIM}, {MAX_FACETS})")]
    TooLarge { dim: usize, facets: usize },
    #[error("no bodies given")]
    NoBodies,
    #[error("unknown body {0:?}")]
    UnknownBody(String),
    #[error("body index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("dimension {dim} is below the supported minimum {needed}")]
    DimensionTooSmall { dim: usize, needed: usize },
    #[error("expected {expected} bodies in the selection, found {found}")]
    SelectionLength { expected: usize, found: usize },
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("perturbation parameter {0} is not positive")]
    BadEpsilon(f64),
    #[error("no simple perturbation after {retries} retries: {last}")]
    RetryCapExceeded { retries: usize, last: Box<GeometryError> },
    #[error("empty brick region")]
    EmptyRegion,
    #[error("brick {index}: {message}")]
    BadBrick { index: usize, message: String },
}

impl GeometryError {
    pub(crate) fn in_body(self, name: &str) -> Self {
        GeometryError::Body { body: name.to_string(), error: Box::new(self) }
    }

    /// Failures that a generic perturbation can repair.
    pub(crate) fn is_combinatorial(&self) -> bool {
        match self {
            GeometryError::Body { error, .. } => error.is_combinatorial(),
            GeometryError::NotSimple { .. } | GeometryError::EmptyFacet(_) | GeometryError::AdjacencyMismatch | GeometryError::Mismatch { .. } => true,
            GeometryError::Degenerate(_) => true,
            _ => false,
        }
    }
}
