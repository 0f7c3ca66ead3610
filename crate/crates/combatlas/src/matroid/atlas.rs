use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::complex::{elements_of, Matroid, SimplicialComplex};
use super::words::{cnt_mask, feasible_mask};
use super::MatroidError;
use crate::atlas::{Atlas, EdgeTransform};
use crate::linalg::{rational, Rational, SymmetricMatrix};

/// Positive weights `c_0, c_1, ...`; indices past the stored list weigh 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightProfile {
    #[serde(serialize_with = "crate::io::serialize_rationals")]
    values: Vec<Rational>,
}

impl WeightProfile {
    pub fn unweighted() -> Self {
        WeightProfile { values: Vec::new() }
    }

    /// `c_{k+1} = 1 + 1/(n-k)`, every other weight 1.
    pub fn strong(n: usize, k: usize) -> Result<Self, MatroidError> {
        if k >= n {
            return Err(MatroidError::KOutOfRange { k, rank: n });
        }
        let mut values = vec![Rational::one(); k + 2];
        values[k + 1] = Rational::one() + rational(1, (n - k) as i64);
        Ok(WeightProfile { values })
    }

    pub fn custom(values: Vec<Rational>) -> Result<Self, MatroidError> {
        if let Some(i) = values.iter().position(|c| *c <= Rational::zero()) {
            return Err(MatroidError::NonPositiveWeight(i));
        }
        Ok(WeightProfile { values })
    }

    pub fn c(&self, i: usize) -> Rational {
        self.values.get(i).cloned().unwrap_or_else(Rational::one)
    }

    pub fn is_unweighted(&self) -> bool {
        self.values.iter().all(One::is_one)
    }
}

/// `A(α, m)` of order `n + 1`; index `n` is `*`.
pub fn local_matrix(c: &SimplicialComplex, alpha: &[usize], m: usize, w: &WeightProfile) -> SymmetricMatrix<Rational> {
    let base = feasible_mask(c, alpha);
    local_matrix_mask(c, base, alpha.len(), m, w)
}

pub(crate) fn local_matrix_mask(c: &SimplicialComplex, base: Option<u64>, ell: usize, m: usize, w: &WeightProfile) -> SymmetricMatrix<Rational> {
    assert!(m >= 1, "local matrices need m >= 1");
    let n = c.ground_size();
    let mut a = SymmetricMatrix::zeros(n + 1);
    let Some(base) = base else { return a };
    let q = |k: num_bigint::BigInt| Rational::from_integer(k);
    let extend = |x: usize| (base >> x & 1 == 0).then_some(base | 1 << x);
    for x in 0..n {
        let ax = extend(x);
        a.set(x, n, w.c(ell + m) * q(cnt_mask(c, ax, m - 1)));
        let Some(ax) = ax else { continue };
        for y in (x + 1)..n {
            let axy = (ax >> y & 1 == 0).then_some(ax | 1 << y);
            a.set(x, y, w.c(ell + m + 1) * q(cnt_mask(c, axy, m - 1)));
        }
    }
    a.set(n, n, w.c((ell + m).saturating_sub(1)) * q(cnt_mask(c, Some(base), m - 1)));
    a
}

/// `α` up to reordering, or the single class of infeasible words.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CanonicalWord {
    Feasible(Vec<usize>),
    Infeasible,
}

/// `(α, m, t)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatroidAtlasVertexKey {
    pub alpha: CanonicalWord,
    pub m: usize,
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub t: Rational,
}

impl fmt::Display for MatroidAtlasVertexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.alpha {
            CanonicalWord::Feasible(a) => {
                let letters: Vec<String> = a.iter().map(usize::to_string).collect();
                write!(f, "({})", letters.join(","))?;
            }
            CanonicalWord::Infeasible => f.write_str("dead")?,
        }
        write!(f, "|m={}|t={}", self.m, self.t)
    }
}

/// Finite truncation of the matroid atlas with its vertex keys.
#[derive(Clone, Debug)]
pub struct MatroidAtlas {
    pub atlas: Atlas<Rational>,
    pub keys: BTreeMap<String, MatroidAtlasVertexKey>,
    pub root: String,
    pub k: usize,
}

pub const DEFAULT_T_SAMPLES: [(i64, i64); 5] = [(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)];

pub fn default_t_samples() -> Vec<Rational> {
    DEFAULT_T_SAMPLES.iter().map(|&(p, q)| rational(p, q)).collect()
}

/// Builds the atlas for target `k`. Each non-sink level is instantiated at
/// every sampled `t` and at `t = 1`; edges always lead to `t = 1` children.
/// Words are canonicalized by their underlying set since every count is
/// symmetric in the letters.
pub fn matroid_atlas(mat: &Matroid, k: usize, w: &WeightProfile, t_samples: &[Rational]) -> Result<MatroidAtlas, MatroidError> {
    let c = mat.complex();
    if k < 1 || k >= c.rank() {
        return Err(MatroidError::KOutOfRange { k, rank: c.rank() });
    }
    if let Some(t) = t_samples.iter().find(|t| **t < Rational::zero() || **t > Rational::one()) {
        return Err(MatroidError::BadTSample(t.to_string()));
    }
    let n = c.ground_size();
    let ts: BTreeSet<Rational> = t_samples.iter().cloned().chain([Rational::one()]).collect();
    let mut atlas = Atlas::new(n + 1);
    let mut keys = BTreeMap::new();
    let mut edges: Vec<(String, usize, String)> = Vec::new();

    let mut level: BTreeSet<Option<u64>> = BTreeSet::from([Some(0)]);
    for m in (0..k).rev() {
        let mut next = BTreeSet::new();
        for &base in &level {
            let ell = base.map_or(0, |b| b.count_ones() as usize);
            let child = |x: Option<usize>| -> Option<u64> {
                let b = base?;
                let f = match x {
                    Some(x) if b >> x & 1 == 1 => return None,
                    Some(x) => b | 1 << x,
                    None => b,
                };
                c.contains(f).then_some(f)
            };
            let alpha = match base {
                Some(b) => CanonicalWord::Feasible(elements_of(b)),
                None => CanonicalWord::Infeasible,
            };
            let times: Vec<Rational> = if m == 0 { vec![Rational::one()] } else { ts.iter().cloned().collect() };
            for t in times {
                let key = MatroidAtlasVertexKey { alpha: alpha.clone(), m, t: t.clone() };
                let id = key.to_string();
                let (matrix, h) = if m == 0 {
                    (local_matrix_mask(c, base, ell, 1, w), vec![Rational::one(); n + 1])
                } else {
                    let upper = local_matrix_mask(c, base, ell, m + 1, w).scale(&t);
                    let lower = local_matrix_mask(c, base, ell, m, w).scale(&(Rational::one() - &t));
                    let mut h = vec![t.clone(); n + 1];
                    h[n] = Rational::one() - &t;
                    (upper.add(&lower), h)
                };
                atlas.insert_vertex(id.clone(), matrix, h).expect("fresh key");
                keys.insert(id.clone(), key);
                if m >= 1 {
                    for label in 0..=n {
                        let target = child((label < n).then_some(label));
                        let target_key = MatroidAtlasVertexKey {
                            alpha: target.map_or(CanonicalWord::Infeasible, |f| CanonicalWord::Feasible(elements_of(f))),
                            m: m - 1,
                            t: Rational::one(),
                        };
                        edges.push((id.clone(), label, target_key.to_string()));
                        next.insert(target);
                    }
                }
            }
        }
        level = next;
    }
    for (from, label, to) in edges {
        atlas.add_edge(&from, label, to, EdgeTransform::Identity).expect("labels are unique per vertex");
    }
    let root = MatroidAtlasVertexKey { alpha: CanonicalWord::Feasible(Vec::new()), m: k - 1, t: Rational::one() }.to_string();
    Ok(MatroidAtlas { atlas, keys, root, k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::matroid::complex::complete_graph;

    #[test]
    fn u24_unweighted_first_level() {
        let u = Matroid::uniform(4, 2).unwrap();
        let a = local_matrix(u.complex(), &[], 1, &WeightProfile::unweighted());
        for x in 0..4 {
            assert_eq!(*a.get(x, x), int(0));
            assert_eq!(*a.get(x, 4), int(1));
            for y in 0..4 {
                if x != y {
                    assert_eq!(*a.get(x, y), int(1));
                }
            }
        }
        assert_eq!(*a.get(4, 4), int(1));
    }

    #[test]
    fn infeasible_word_gives_zero_matrix() {
        let u = Matroid::uniform(4, 2).unwrap();
        assert!(local_matrix(u.complex(), &[0, 1, 2], 1, &WeightProfile::unweighted()).is_zero());
        assert!(local_matrix(u.complex(), &[3, 3], 2, &WeightProfile::unweighted()).is_zero());
    }

    #[test]
    fn all_ones_profile_matches_unweighted() {
        let k4 = Matroid::graphic(&complete_graph(4)).unwrap();
        let ones = WeightProfile::custom(vec![int(1); 6]).unwrap();
        for m in 1..3 {
            assert_eq!(local_matrix(k4.complex(), &[0], m, &ones), local_matrix(k4.complex(), &[0], m, &WeightProfile::unweighted()));
        }
    }

    #[test]
    fn strong_weights() {
        let w = WeightProfile::strong(4, 1).unwrap();
        assert_eq!(w.c(2), rational(4, 3));
        assert_eq!(w.c(1), int(1));
        assert_eq!(w.c(9), int(1));
        assert!(WeightProfile::custom(vec![int(1), int(0)]).is_err());
    }

    #[test]
    fn u24_k1_root_is_sink() {
        let u = Matroid::uniform(4, 2).unwrap();
        let ma = matroid_atlas(&u, 1, &WeightProfile::unweighted(), &default_t_samples()).unwrap();
        let root = ma.atlas.vertex(&ma.root).unwrap();
        assert!(root.is_sink());
        assert_eq!(root.matrix, local_matrix(u.complex(), &[], 1, &WeightProfile::unweighted()));
        assert_eq!(ma.atlas.len(), 1);
    }

    #[test]
    fn k4_k2_shape() {
        let k4 = Matroid::graphic(&complete_graph(4)).unwrap();
        let ma = matroid_atlas(&k4, 2, &WeightProfile::unweighted(), &default_t_samples()).unwrap();
        assert_eq!(ma.root, "()|m=1|t=1");
        let root = ma.atlas.vertex(&ma.root).unwrap();
        assert_eq!(root.edges.len(), 7);
        assert_eq!(root.edges[&3].target, "(3)|m=0|t=1");
        assert_eq!(root.edges[&6].target, "()|m=0|t=1");
        // Five t values at the root level plus seven sinks.
        assert_eq!(ma.atlas.len(), 5 + 7);
        for v in ma.atlas.non_sinks() {
            let labels: Vec<usize> = v.edges.keys().copied().collect();
            assert_eq!(labels, (0..7).collect::<Vec<_>>());
        }
    }

    #[test]
    fn k_range_and_t_range() {
        let u = Matroid::uniform(4, 2).unwrap();
        assert!(matches!(matroid_atlas(&u, 2, &WeightProfile::unweighted(), &[]), Err(MatroidError::KOutOfRange { .. })));
        assert!(matches!(matroid_atlas(&u, 0, &WeightProfile::unweighted(), &[]), Err(MatroidError::KOutOfRange { .. })));
        assert!(matches!(matroid_atlas(&u, 1, &WeightProfile::unweighted(), &[rational(3, 2)]), Err(MatroidError::BadTSample(_))));
    }
}
