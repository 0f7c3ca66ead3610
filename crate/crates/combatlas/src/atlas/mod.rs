//! Combinatorial atlases: acyclic digraphs whose vertices carry a symmetric
//! matrix `M_v` and a vector `h_v`, and whose edges carry linear maps.
//!
//! Property checkers reduce every universally quantified condition to a
//! finite computation: linear conditions to basis vectors, quadratic ones to
//! matrix equality or inertia.

mod json;
mod local_global;
mod properties;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Scalar, SquareMatrix, SymmetricMatrix, Tolerance};

pub use json::{atlas_from_str, atlas_from_value, atlas_to_json};
pub use local_global::{verify_local_global, verify_local_global_with, LocalGlobalReport, PerronDiagnostics};
pub use properties::{check_property, check_property_with, check_pull_sufficient, check_pull_sufficient_with, validate_atlas, validate_atlas_with, ImplicationReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AtlasError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("vertex {vertex:?}: {what} has order {found}, atlas dimension is {expected}")]
    DimensionMismatch { vertex: String, what: &'static str, expected: usize, found: usize },
    #[error("vertex {vertex:?}: duplicate edge label {label}")]
    DuplicateLabel { vertex: String, label: usize },
    #[error("vertex {vertex:?}: edge label {label} outside 0..{dimension}")]
    LabelOutOfRange { vertex: String, label: usize, dimension: usize },
    #[error("vertex {0:?} is a sink; the property needs out-edges")]
    Sink(String),
}

/// Linear map attached to an edge.
#[derive(Clone, Debug, PartialEq)]
pub enum EdgeTransform<T> {
    Identity,
    Dense(SquareMatrix<T>),
}

impl<T: Scalar> EdgeTransform<T> {
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        match self {
            EdgeTransform::Identity => v.to_vec(),
            EdgeTransform::Dense(t) => t.mul_vec(v),
        }
    }

    pub fn apply_transpose(&self, v: &[T]) -> Vec<T> {
        match self {
            EdgeTransform::Identity => v.to_vec(),
            EdgeTransform::Dense(t) => t.transpose_mul_vec(v),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            EdgeTransform::Identity => true,
            EdgeTransform::Dense(t) => t.is_identity(),
        }
    }

    /// `Tᵀ M T`.
    pub fn pull_back(&self, m: &SymmetricMatrix<T>) -> SymmetricMatrix<T> {
        match self {
            EdgeTransform::Identity => m.clone(),
            EdgeTransform::Dense(t) => m.congruence(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge<T> {
    pub target: String,
    pub transform: EdgeTransform<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AtlasVertex<T> {
    pub id: String,
    pub matrix: SymmetricMatrix<T>,
    pub h: Vec<T>,
    /// Out-edges keyed by label.
    pub edges: BTreeMap<usize, Edge<T>>,
}

impl<T> AtlasVertex<T> {
    pub fn is_sink(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Finite atlas of dimension `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct Atlas<T> {
    dimension: usize,
    vertices: BTreeMap<String, AtlasVertex<T>>,
}

impl<T: Scalar> Atlas<T> {
    pub fn new(dimension: usize) -> Self {
        Atlas { dimension, vertices: BTreeMap::new() }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn insert_vertex(&mut self, id: impl Into<String>, matrix: SymmetricMatrix<T>, h: Vec<T>) -> Result<(), AtlasError> {
        let id = id.into();
        if self.vertices.contains_key(&id) {
            return Err(AtlasError::DuplicateVertex(id));
        }
        let r = self.dimension;
        if matrix.order() != r {
            return Err(AtlasError::DimensionMismatch { vertex: id, what: "matrix", expected: r, found: matrix.order() });
        }
        if h.len() != r {
            return Err(AtlasError::DimensionMismatch { vertex: id, what: "h", expected: r, found: h.len() });
        }
        self.vertices.insert(id.clone(), AtlasVertex { id, matrix, h, edges: BTreeMap::new() });
        Ok(())
    }

    /// Adds an edge; the target may be inserted later.
    pub fn add_edge(&mut self, from: &str, label: usize, target: impl Into<String>, transform: EdgeTransform<T>) -> Result<(), AtlasError> {
        let r = self.dimension;
        let vertex = self.vertices.get_mut(from).ok_or_else(|| AtlasError::UnknownVertex(from.to_string()))?;
        if label >= r {
            return Err(AtlasError::LabelOutOfRange { vertex: from.to_string(), label, dimension: r });
        }
        if let EdgeTransform::Dense(t) = &transform {
            if t.order() != r {
                return Err(AtlasError::DimensionMismatch { vertex: from.to_string(), what: "transform", expected: r, found: t.order() });
            }
        }
        if vertex.edges.contains_key(&label) {
            return Err(AtlasError::DuplicateLabel { vertex: from.to_string(), label });
        }
        vertex.edges.insert(label, Edge { target: target.into(), transform });
        Ok(())
    }

    pub fn vertex(&self, id: &str) -> Result<&AtlasVertex<T>, AtlasError> {
        self.vertices.get(id).ok_or_else(|| AtlasError::UnknownVertex(id.to_string()))
    }

    pub fn vertex_mut(&mut self, id: &str) -> Result<&mut AtlasVertex<T>, AtlasError> {
        self.vertices.get_mut(id).ok_or_else(|| AtlasError::UnknownVertex(id.to_string()))
    }

    pub fn vertices(&self) -> impl Iterator<Item = &AtlasVertex<T>> {
        self.vertices.values()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.vertices.keys().map(String::as_str)
    }

    pub fn non_sinks(&self) -> impl Iterator<Item = &AtlasVertex<T>> {
        self.vertices.values().filter(|v| !v.is_sink())
    }

    pub fn sinks(&self) -> impl Iterator<Item = &AtlasVertex<T>> {
        self.vertices.values().filter(|v| v.is_sink())
    }

    /// Vertices with no in-edges.
    pub fn sources(&self) -> Vec<&str> {
        let targets: BTreeSet<&str> = self.vertices.values().flat_map(|v| v.edges.values().map(|e| e.target.as_str())).collect();
        self.ids().filter(|id| !targets.contains(id)).collect()
    }
}

/// Checked properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Property {
    Valid,
    Inh,
    Pull,
    PullEq,
    Irr,
    HPos,
    Iden,
    TInv,
    DecSupp,
    PullSufficient,
    LocalGlobal,
    Ope,
}

impl Property {
    pub const LOCAL: [Property; 8] =
        [Property::Inh, Property::Pull, Property::PullEq, Property::Irr, Property::HPos, Property::Iden, Property::TInv, Property::DecSupp];

    pub fn needs_edges(self) -> bool {
        !matches!(self, Property::Irr | Property::HPos | Property::Valid | Property::Ope)
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::Valid => "Valid",
            Property::Inh => "Inh",
            Property::Pull => "Pull",
            Property::PullEq => "PullEq",
            Property::Irr => "Irr",
            Property::HPos => "hPos",
            Property::Iden => "Iden",
            Property::TInv => "TInv",
            Property::DecSupp => "DecSupp",
            Property::PullSufficient => "PullSufficient",
            Property::LocalGlobal => "LocalGlobal",
            Property::Ope => "OPE",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a property failed, with both sides rendered in the atlas backend.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub vertex: Option<String>,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl PropertyReport {
    pub fn pass(property: Property, vertex: Option<&str>) -> Self {
        PropertyReport { property, vertex: vertex.map(str::to_string), holds: true, witness: None }
    }

    pub fn fail(property: Property, vertex: Option<&str>, witness: Witness) -> Self {
        PropertyReport { property, vertex: vertex.map(str::to_string), holds: false, witness: Some(witness) }
    }
}

/// Knobs shared by the property checkers.
#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub tol: Tolerance,
    /// Restrict transposition invariance to pairwise distinct index triples.
    pub tinv_distinct_only: bool,
    /// Demand nonnegative diagonals in `validate_atlas`.
    pub require_nonneg_diagonal: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { tol: Tolerance::default(), tinv_distinct_only: false, require_nonneg_diagonal: true }
    }
}

#[cfg(test)]
mod tests;
