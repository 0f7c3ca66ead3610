//! Matroids as languages of feasible words, their atlas, Mason's
//! inequalities and matroid recognition.
//!
//! Ground elements are `0..n`; the extra atlas coordinate `*` has index `n`.

mod atlas;
mod complex;
mod json;
mod mason;
mod recognize;
mod suite;
mod words;

use thiserror::Error;

pub use atlas::{default_t_samples, local_matrix, matroid_atlas, CanonicalWord, MatroidAtlas, MatroidAtlasVertexKey, WeightProfile, DEFAULT_T_SAMPLES};
pub use complex::{complete_graph, elements_of, mask_of, Matroid, SimplicialComplex, MAX_GROUND_SET};
pub use json::{complex_from_str, complex_from_value, complex_to_json, SetKind};
pub use mason::{sink_hyperbolic, uniform_b_matrix, verify_mason, MasonReport, SinkReport};
pub use recognize::{abs_search, downsets, recognize_matroid, AbsWitness, RecognitionReport};
pub use suite::{verify_matroid_atlas, AtlasSuiteReport};
pub use words::{cnt, cnt_by_enumeration, factorial, feasible_mask, is_feasible};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatroidError {
    #[error("ground set of size {n} exceeds the supported maximum {max}")]
    GroundSetTooLarge { n: usize, max: usize },
    #[error("set {set:?} has an element outside 0..{n}")]
    ElementOutOfRange { set: Vec<usize>, n: usize },
    #[error("family is not downward closed: {face:?} is listed but {missing:?} is not")]
    NotDownwardClosed { face: Vec<usize>, missing: Vec<usize> },
    #[error("exchange property fails for S = {s:?}, T = {t:?}")]
    ExchangeViolation { s: Vec<usize>, t: Vec<usize> },
    #[error("uniform matroid needs k <= n, got k = {k}, n = {n}")]
    BadUniform { n: usize, k: usize },
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("k = {k} outside 1..{rank}")]
    KOutOfRange { k: usize, rank: usize },
    #[error("weight c_{0} must be positive")]
    NonPositiveWeight(usize),
    #[error("t sample {0} outside [0, 1]")]
    BadTSample(String),
}

/// Small graphs used by the test catalog.
pub mod catalog {
    use super::{complete_graph, Matroid};

    pub fn k4() -> Matroid {
        Matroid::graphic(&complete_graph(4)).expect("simple graph")
    }

    pub fn k5() -> Matroid {
        Matroid::graphic(&complete_graph(5)).expect("simple graph")
    }

    /// The 5-cycle with the chord `{0, 2}`.
    pub fn c5_chord() -> Matroid {
        Matroid::graphic(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).expect("simple graph")
    }

    /// `U(k, n)` for `n <= max_n` and `2 <= k <= n`.
    pub fn uniforms(max_n: usize) -> Vec<(String, Matroid)> {
        (2..=max_n).flat_map(|n| (2..=n).map(move |k| (format!("U({k},{n})"), Matroid::uniform(n, k).expect("k <= n")))).collect()
    }

    /// Uniform matroids plus the three graphic ones.
    pub fn standard(max_n: usize) -> Vec<(String, Matroid)> {
        let mut all = uniforms(max_n);
        all.push(("M(K4)".into(), k4()));
        all.push(("M(K5)".into(), k5()));
        all.push(("M(C5+chord)".into(), c5_chord()));
        all
    }
}
