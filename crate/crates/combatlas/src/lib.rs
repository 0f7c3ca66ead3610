//! Combinatorial atlases and the hyperbolicity checks behind them.
//!
//! The crate builds finite atlases for matroids, Lorentzian polynomials and
//! families of strongly isomorphic polytopes, and verifies the local–global
//! principle vertex by vertex.

pub mod atlas;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod lorentzian;
pub mod matroid;
