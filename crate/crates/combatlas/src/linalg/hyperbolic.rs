use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use super::inertia::{inertia_scaled, inertia_with, Inertia};
use super::jacobi;
use super::matrix::SymmetricMatrix;
use super::scalar::{dot, Scalar, Tolerance};
use super::LinalgError;

/// At most one positive eigenvalue.
pub fn check_ope<T: Scalar>(m: &SymmetricMatrix<T>) -> bool {
    check_ope_with(m, &Tolerance::default())
}

pub fn check_ope_with<T: Scalar>(m: &SymmetricMatrix<T>, tol: &Tolerance) -> bool {
    inertia_with(m, tol).n_pos <= 1
}

/// Outcome of the negative-definite-complement test.
#[derive(Clone, Debug)]
pub struct NdcOutcome<T> {
    /// `None` when `M` is negative semidefinite (the witness is `g = 0`).
    pub witness: Option<Vec<T>>,
    /// Inertia of the form restricted to `{v : <v, Mg> = 0}`.
    pub complement: Inertia,
    pub holds: bool,
}

pub fn check_ndc<T: Scalar>(m: &SymmetricMatrix<T>) -> bool {
    ndc(m, &Tolerance::default()).holds
}

pub fn ndc<T: Scalar>(m: &SymmetricMatrix<T>, tol: &Tolerance) -> NdcOutcome<T> {
    let r = m.order();
    if inertia_with(m, tol).n_pos == 0 {
        return NdcOutcome { witness: None, complement: Inertia { n_zero: r.saturating_sub(1), ..Inertia::default() }, holds: true };
    }
    let g = positive_direction(m, tol).expect("a matrix with a positive eigenvalue has a positive direction");
    let complement = complement_inertia(m, &g, tol);
    NdcOutcome { holds: complement.n_pos == 0, witness: Some(g), complement }
}

/// NDC with a caller-supplied direction; `None` unless `<g, Mg> > 0`.
pub fn check_ndc_with_witness<T: Scalar>(m: &SymmetricMatrix<T>, g: &[T], tol: &Tolerance) -> Option<bool> {
    let value = m.form(g, g);
    let scale = m.max_abs() * g.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max).powi(2);
    if value.sign_with(tol.threshold(scale)) != Ordering::Greater {
        return None;
    }
    Some(complement_inertia(m, g, tol).n_pos == 0)
}

/// Tries the top eigenvector, then standard basis vectors, then `e_i ± e_j`
/// and the all-ones vector.
fn positive_direction<T: Scalar>(m: &SymmetricMatrix<T>, tol: &Tolerance) -> Option<Vec<T>> {
    let r = m.order();
    let threshold = tol.threshold(m.max_abs());
    let positive = |g: &[T]| m.form(g, g).sign_with(threshold) == Ordering::Greater;
    let mut candidates: Vec<Vec<T>> = Vec::new();
    if let Ok(e) = jacobi::jacobi_eigen(&m.to_f64()) {
        if let Some(top) = e.vectors.last() {
            candidates.push(top.iter().map(|&x| T::from_f64_approx(x)).collect());
        }
    }
    let unit = |i: usize| -> Vec<T> { (0..r).map(|k| if k == i { T::one() } else { T::zero() }).collect() };
    candidates.extend((0..r).map(unit));
    for i in 0..r {
        for j in (i + 1)..r {
            for sign in [T::one(), -T::one()] {
                let mut v = unit(i);
                v[j] = sign;
                candidates.push(v);
            }
        }
    }
    candidates.push(vec![T::one(); r]);
    candidates.into_iter().find(|g| positive(g))
}

/// Inertia of `M` on the hyperplane orthogonal to `c = Mg`.
///
/// Basis `e_j - (c_j / c_p) e_p` for `j != p`, with `p` the largest `|c_p|`.
fn complement_inertia<T: Scalar>(m: &SymmetricMatrix<T>, g: &[T], tol: &Tolerance) -> Inertia {
    let r = m.order();
    let c = m.mul_vec(g);
    let p = (0..r).max_by(|&a, &b| c[a].to_f64().abs().total_cmp(&c[b].to_f64().abs())).expect("nonempty");
    let others: Vec<usize> = (0..r).filter(|&j| j != p).collect();
    let ratio: Vec<T> = others.iter().map(|&j| c[j].clone() / c[p].clone()).collect();
    let q = SymmetricMatrix::from_fn(others.len(), |a, b| {
        let (j, k) = (others[a], others[b]);
        m.get(j, k).clone() - ratio[b].clone() * m.get(j, p).clone() - ratio[a].clone() * m.get(p, k).clone()
            + ratio[a].clone() * ratio[b].clone() * m.get(p, p).clone()
    });
    inertia_scaled(&q, tol, m.max_abs())
}

/// `<v, Mw>^2 >= <v, Mv><w, Mw>` whenever `<w, Mw> > 0`.
pub fn check_hyp_pair<T: Scalar>(m: &SymmetricMatrix<T>, v: &[T], w: &[T]) -> Result<bool, LinalgError> {
    check_hyp_pair_with(m, v, w, &Tolerance::default())
}

pub fn check_hyp_pair_with<T: Scalar>(m: &SymmetricMatrix<T>, v: &[T], w: &[T], tol: &Tolerance) -> Result<bool, LinalgError> {
    for x in [v, w] {
        if x.len() != m.order() {
            return Err(LinalgError::DimensionMismatch { expected: m.order(), found: x.len() });
        }
    }
    let mw = m.mul_vec(w);
    let vmw = dot(v, &mw);
    let wmw = dot(w, &mw);
    let vmv = m.form(v, v);
    Ok(pair_holds(&vmv, &vmw, &wmw, tol))
}

fn pair_holds<T: Scalar>(vmv: &T, vmw: &T, wmw: &T, tol: &Tolerance) -> bool {
    if wmw.sign() != Ordering::Greater {
        return true;
    }
    let lhs = vmw.clone() * vmw.clone();
    let rhs = vmv.clone() * wmw.clone();
    lhs >= rhs || lhs.near(&rhs, tol)
}

/// Result of sampling (Hyp) over a structured and random vector set.
#[derive(Clone, Debug)]
pub struct HypSample<T> {
    pub vectors: usize,
    pub pairs_checked: usize,
    pub violation: Option<(Vec<T>, Vec<T>)>,
}

pub const DEFAULT_HYP_SAMPLES: usize = 64;

/// Checks every ordered pair drawn from the standard basis, the all-ones
/// vector, `e_i ± e_j`, and `random` vectors with small rational entries.
///
/// Sampling can only miss violations; [`check_ope`] is authoritative.
pub fn check_hyp_sampled<T: Scalar, R: Rng>(m: &SymmetricMatrix<T>, random: usize, rng: &mut R) -> HypSample<T> {
    let r = m.order();
    let mut vectors: Vec<Vec<T>> = Vec::new();
    for i in 0..r {
        vectors.push((0..r).map(|k| if k == i { T::one() } else { T::zero() }).collect());
    }
    vectors.push(vec![T::one(); r]);
    for i in 0..r {
        for j in (i + 1)..r {
            for s in [1i64, -1] {
                vectors.push((0..r).map(|k| T::from_int(if k == i { 1 } else if k == j { s } else { 0 })).collect());
            }
        }
    }
    for _ in 0..random {
        let den = rng.gen_range(1..=6i64);
        let num: Vec<i64> = (0..r).map(|_| rng.gen_range(-9..=9i64)).collect();
        vectors.push(num.iter().map(|&x| T::from_int(x) / T::from_int(den)).collect());
    }
    let tol = Tolerance::default();
    let gram = integer_gram(m, &vectors).unwrap_or_else(|| {
        let images: Vec<Vec<T>> = vectors.iter().map(|v| m.mul_vec(v)).collect();
        GramSigns::Generic(vectors.iter().map(|a| images.iter().map(|mb| dot(a, mb)).collect()).collect())
    });
    let n = vectors.len();
    let mut pairs = 0;
    for wi in 0..n {
        for vi in 0..n {
            pairs += 1;
            if !gram.pair_holds(vi, wi, &tol) {
                return HypSample { vectors: n, pairs_checked: pairs, violation: Some((vectors[vi].clone(), vectors[wi].clone())) };
            }
        }
    }
    HypSample { vectors: n, pairs_checked: pairs, violation: None }
}

enum GramSigns<T> {
    Integer(Vec<Vec<i128>>),
    Generic(Vec<Vec<T>>),
}

impl<T: Scalar> GramSigns<T> {
    fn pair_holds(&self, v: usize, w: usize, tol: &Tolerance) -> bool {
        match self {
            GramSigns::Integer(g) => {
                if g[w][w] <= 0 {
                    return true;
                }
                g[v][w] * g[v][w] >= g[v][v] * g[w][w]
            }
            GramSigns::Generic(g) => pair_holds(&g[v][v], &g[v][w], &g[w][w], tol),
        }
    }
}

/// Exact Gram matrix after clearing denominators, which rescales both sides
/// of the pair inequality by the same positive factor.
fn integer_gram<T: Scalar>(m: &SymmetricMatrix<T>, vectors: &[Vec<T>]) -> Option<GramSigns<T>> {
    let exact: Vec<_> = (0..m.order()).flat_map(|i| m.row(i).to_vec()).map(|x| x.to_rational()).collect::<Option<Vec<_>>>()?;
    let lcm = exact.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let r = m.order();
    let mi: Vec<i128> = exact.iter().map(|x| (x.numer() * (&lcm / x.denom())).to_i128()).collect::<Option<_>>()?;
    let vi: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| {
            let rs: Vec<_> = v.iter().map(|x| x.to_rational()).collect::<Option<Vec<_>>>()?;
            let l = rs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            rs.iter().map(|x| (x.numer() * (&l / x.denom())).to_i128()).collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()?;
    let images: Vec<Vec<i128>> = vi
        .iter()
        .map(|v| (0..r).map(|i| (0..r).try_fold(0i128, |acc, k| acc.checked_add(mi[i * r + k].checked_mul(v[k])?))).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let mut gram = vec![vec![0i128; vi.len()]; vi.len()];
    for (a, va) in vi.iter().enumerate() {
        for (b, mb) in images.iter().enumerate() {
            gram[a][b] = va.iter().zip(mb).try_fold(0i128, |acc, (x, y)| acc.checked_add(x.checked_mul(*y)?))?;
        }
    }
    if gram.iter().flatten().any(|x| x.unsigned_abs() > (1u128 << 62)) {
        return None;
    }
    Some(GramSigns::Integer(gram))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{int, Rational};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(rows: &[&[i64]]) -> SymmetricMatrix<Rational> {
        SymmetricMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn ope_examples() {
        assert!(check_ope(&SymmetricMatrix::<Rational>::zeros(3)));
        assert!(!check_ope(&q(&[&[2, 0], &[0, 2]])));
        assert!(check_ope(&q(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 1]])));
    }

    #[test]
    fn ndc_examples() {
        assert!(check_ndc(&q(&[&[1, 0], &[0, -1]])));
        assert!(!check_ndc(&q(&[&[1, 0], &[0, 1]])));
        assert!(check_ndc(&SymmetricMatrix::<Rational>::zeros(2)));
        // J - 2I: every coordinate and pair direction is nonpositive.
        assert!(check_ndc(&q(&[&[-1, 1, 1], &[1, -1, 1], &[1, 1, -1]])));
        assert!(check_ndc(&q(&[&[5]])));
    }

    #[test]
    fn ndc_with_supplied_witness() {
        let m = q(&[&[0, 1], &[1, 0]]);
        assert_eq!(check_ndc_with_witness(&m, &v(&[1, 1]), &Tolerance::default()), Some(true));
        assert_eq!(check_ndc_with_witness(&m, &v(&[1, -1]), &Tolerance::default()), None);
    }

    #[test]
    fn hyp_pair_examples() {
        let swap = q(&[&[0, 1], &[1, 0]]);
        assert!(check_hyp_pair(&swap, &v(&[1, 0]), &v(&[1, 1])).unwrap());
        let id = SymmetricMatrix::<Rational>::identity(2);
        assert!(!check_hyp_pair(&id, &v(&[1, 0]), &v(&[0, 1])).unwrap());
        assert!(check_hyp_pair(&id, &v(&[3, 4]), &v(&[3, 4])).unwrap());
        assert!(matches!(check_hyp_pair(&id, &v(&[1]), &v(&[0, 1])), Err(LinalgError::DimensionMismatch { .. })));
    }

    #[test]
    fn sampler_finds_violation_of_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = check_hyp_sampled(&SymmetricMatrix::<Rational>::identity(3), 8, &mut rng);
        assert!(s.violation.is_some());
        let s = check_hyp_sampled(&q(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 1]]), 16, &mut rng);
        assert!(s.violation.is_none());
        assert_eq!(s.vectors, 3 + 1 + 6 + 16);
        let f = check_hyp_sampled(&q(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 1]]).to_f64(), 16, &mut rng);
        assert!(f.violation.is_none());
    }
}
