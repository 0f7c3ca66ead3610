use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::atlas::{local_matrix, WeightProfile};
use super::complex::{Matroid, SimplicialComplex};
use super::words::{factorial, feasible_mask};
use super::MatroidError;
use crate::linalg::{check_ope, exact_inertia, int, Inertia, Rational, SymmetricMatrix};

/// Both routes to (Hyp) at a sink `A(α, 1)`.
#[derive(Clone, Debug, Serialize)]
pub struct SinkReport {
    pub feasible: bool,
    pub direct_inertia: Inertia,
    pub direct_ope: bool,
    /// Classes of `x ~ y` (`αxy` infeasible) on `Cnt(α)`.
    pub classes: Vec<Vec<usize>>,
    pub transitive: bool,
    /// Rows of `A` agree within each class.
    pub rows_agree: bool,
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub rho: Rational,
    /// Rescaled quotient `B'` on class representatives and `*`.
    #[serde(skip)]
    pub reduced: Option<SymmetricMatrix<Rational>>,
    pub minus_one_multiplicity: Option<usize>,
    #[serde(serialize_with = "crate::io::serialize_opt_rational")]
    pub determinant: Option<Rational>,
    #[serde(serialize_with = "crate::io::serialize_opt_rational")]
    pub determinant_formula: Option<Rational>,
    /// Verdict reached through the quotient; `None` when the reduction does not apply.
    pub route_ope: Option<bool>,
    pub agree: bool,
    pub holds: bool,
}

fn union_find_classes(items: &[usize], related: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..items.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..items.len() {
        for j in (i + 1)..items.len() {
            if related(items[i], items[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; items.len()];
    for i in 0..items.len() {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(items[i]);
    }
    classes
}

/// Checks (Hyp) at the sink `(α, 0, 1)` by inertia and by the quotient
/// argument over parallel classes.
pub fn sink_hyperbolic(c: &SimplicialComplex, alpha: &[usize], w: &WeightProfile) -> SinkReport {
    let a = local_matrix(c, alpha, 1, w);
    let direct_inertia = exact_inertia(&a);
    let direct_ope = direct_inertia.n_pos <= 1;
    let ell = alpha.len();
    let rho = w.c(ell + 2) * w.c(ell) / (w.c(ell + 1) * w.c(ell + 1));
    let Some(base) = feasible_mask(c, alpha) else {
        return SinkReport {
            feasible: false,
            direct_inertia,
            direct_ope,
            classes: Vec::new(),
            transitive: true,
            rows_agree: true,
            rho,
            reduced: None,
            minus_one_multiplicity: None,
            determinant: None,
            determinant_formula: None,
            route_ope: Some(true),
            agree: direct_ope,
            holds: direct_ope,
        };
    };
    let n = c.ground_size();
    let cont: Vec<usize> = (0..n).filter(|&x| base >> x & 1 == 0 && c.contains(base | 1 << x)).collect();
    let parallel = |x: usize, y: usize| !c.contains(base | 1 << x | 1 << y);
    let classes = union_find_classes(&cont, parallel);
    let transitive = classes.iter().all(|cl| cl.iter().enumerate().all(|(i, &x)| cl[i + 1..].iter().all(|&y| parallel(x, y))));
    let rows_agree = classes.iter().all(|cl| cl.iter().all(|&x| a.row(x) == a.row(cl[0])));

    let r = classes.len();
    let mut reps: Vec<usize> = classes.iter().map(|cl| cl[0]).collect();
    reps.push(n);
    let b = a.restrict(&reps);
    let (c1, c2) = (w.c(ell + 1), w.c(ell + 2));
    let reduced = SymmetricMatrix::from_fn(r + 1, |i, j| match (i == r, j == r) {
        (false, false) => b.get(i, j).clone() / c2.clone(),
        (true, true) => b.get(i, j).clone() * c2.clone() / (c1.clone() * c1.clone()),
        _ => b.get(i, j).clone() / c1.clone(),
    });
    let sign = if r % 2 == 0 { int(1) } else { int(-1) };
    let r_q = int(r as i64);
    let determinant_formula = sign.clone() * (rho.clone() * (int(1) - r_q.clone()) + r_q);
    let determinant = reduced.determinant();
    let shifted = reduced.add(&SymmetricMatrix::identity(r + 1));
    let minus_one = exact_inertia(&shifted).n_zero;

    let route_ope = if !(transitive && rows_agree) {
        None
    } else if r == 0 {
        // `B' = [ρ]` with `ρ > 0`.
        Some(true)
    } else if minus_one == r - 1 {
        // Two eigenvalues remain, with sum `ρ + r - 1 > 0`; at most one is
        // positive iff their product `det·(-1)^(r-1)` is at most zero.
        Some(!(determinant.clone() * sign.clone()).is_negative())
    } else {
        None
    };
    let reducible = route_ope.is_some();
    let agree = route_ope.map_or(true, |v| v == direct_ope) && (!reducible || determinant == determinant_formula);
    SinkReport {
        feasible: true,
        direct_inertia,
        direct_ope,
        classes,
        transitive,
        rows_agree,
        rho,
        reduced: Some(reduced),
        minus_one_multiplicity: Some(minus_one),
        determinant: Some(determinant),
        determinant_formula: Some(determinant_formula),
        route_ope,
        agree,
        holds: direct_ope && agree,
    }
}

/// Both routes to (ultra-)log-concavity of the independence profile at `k`.
#[derive(Clone, Debug, Serialize)]
pub struct MasonReport {
    pub n: usize,
    pub k: usize,
    pub strong: bool,
    pub profile: Vec<u64>,
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub factor: Rational,
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub direct_lhs: Rational,
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub direct_rhs: Rational,
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub direct_slack: Rational,
    pub direct_holds: bool,
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub vmv: Rational,
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub vmw: Rational,
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub wmw: Rational,
    /// The three forms equal their factorial closed forms.
    pub forms_match: bool,
    pub root_inertia: Inertia,
    pub root_ope: bool,
    pub pair_holds: bool,
    /// `(<v,Mw>^2 - <v,Mv><w,Mw>) / (k!)^2`.
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub atlas_slack: Rational,
    pub atlas_holds: bool,
    pub agree: bool,
    pub holds: bool,
}

pub fn verify_mason(mat: &Matroid, k: usize, strong: bool) -> Result<MasonReport, MatroidError> {
    let c = mat.complex();
    let rank = c.rank();
    if k < 1 || k >= rank {
        return Err(MatroidError::KOutOfRange { k, rank });
    }
    let n = c.ground_size();
    let profile = c.independence_profile();
    let i = |j: usize| Rational::from_integer(profile[j].into());
    let kq = int(k as i64);
    let mut factor = (kq.clone() + int(1)) / kq;
    if strong {
        factor *= int(1) + Rational::new(1.into(), ((n - k) as i64).into());
    }
    let direct_lhs = i(k) * i(k);
    let direct_rhs = factor.clone() * i(k - 1) * i(k + 1);
    let direct_slack = direct_lhs.clone() - direct_rhs.clone();
    let direct_holds = !direct_slack.is_negative();

    let w = if strong { WeightProfile::strong(n, k)? } else { WeightProfile::unweighted() };
    let root = local_matrix(c, &[], k, &w);
    let mut v = vec![int(1); n + 1];
    v[n] = int(0);
    let mut e = vec![int(0); n + 1];
    e[n] = int(1);
    let vmv = root.form(&v, &v);
    let vmw = root.form(&v, &e);
    let wmw = root.form(&e, &e);
    let fact = |j: usize| Rational::from_integer(factorial(j));
    let forms_match = vmv == w.c(k + 1) * fact(k + 1) * i(k + 1) && vmw == fact(k) * i(k) && wmw == fact(k - 1) * i(k - 1);
    let root_inertia = exact_inertia(&root);
    let root_ope = check_ope(&root);
    let pair_gap = vmw.clone() * vmw.clone() - vmv.clone() * wmw.clone();
    let pair_holds = !wmw.is_positive() || !pair_gap.is_negative();
    let atlas_slack = pair_gap / (fact(k) * fact(k));
    let atlas_holds = root_ope && pair_holds;
    let agree = atlas_slack == direct_slack && atlas_holds == direct_holds;
    Ok(MasonReport {
        n,
        k,
        strong,
        profile,
        factor,
        direct_lhs,
        direct_rhs,
        direct_slack,
        direct_holds,
        vmv,
        vmw,
        wmw,
        forms_match,
        root_inertia,
        root_ope,
        pair_holds,
        atlas_slack,
        atlas_holds,
        agree,
        holds: direct_holds && atlas_holds && forms_match && agree,
    })
}

/// The quotient `B` for `r` classes with unit weights: zero diagonal, ones elsewhere.
pub fn uniform_b_matrix(r: usize) -> SymmetricMatrix<Rational> {
    SymmetricMatrix::from_fn(r + 1, |i, j| if i == j && i < r { Rational::zero() } else { Rational::one() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;
    use crate::matroid::complex::complete_graph;

    #[test]
    fn u24_strong_equality() {
        let u = Matroid::uniform(4, 2).unwrap();
        let rep = verify_mason(&u, 1, true).unwrap();
        assert_eq!(rep.direct_lhs, int(16));
        assert_eq!(rep.direct_rhs, int(16));
        assert_eq!(rep.direct_slack, int(0));
        assert_eq!(rep.atlas_slack, int(0));
        assert!(rep.holds, "{rep:?}");
    }

    #[test]
    fn k4_strong_strict() {
        let k4 = Matroid::graphic(&complete_graph(4)).unwrap();
        let rep = verify_mason(&k4, 2, true).unwrap();
        assert_eq!(rep.direct_lhs, int(225));
        assert_eq!(rep.direct_rhs, int(180));
        assert_eq!(rep.factor, rational(15, 8));
        assert!(rep.holds && rep.agree);
        assert!(verify_mason(&k4, 3, true).is_err());
        assert!(verify_mason(&k4, 0, false).is_err());
    }

    #[test]
    fn u24_sink_quotient() {
        let u = Matroid::uniform(4, 2).unwrap();
        let rep = sink_hyperbolic(u.complex(), &[], &WeightProfile::unweighted());
        assert_eq!(rep.classes.len(), 4);
        assert_eq!(rep.reduced.as_ref().unwrap(), &uniform_b_matrix(4));
        assert_eq!(rep.minus_one_multiplicity, Some(3));
        assert_eq!(rep.determinant, Some(int(1)));
        assert_eq!(rep.direct_inertia.n_pos, 1);
        assert!(rep.holds && rep.agree);
    }

    #[test]
    fn weighted_sink_ratio() {
        // At ℓ = k-1 the corner ratio is 1 + 1/(n-k).
        let u = Matroid::uniform(5, 3).unwrap();
        let w = WeightProfile::strong(5, 2).unwrap();
        let rep = sink_hyperbolic(u.complex(), &[0], &w);
        assert_eq!(rep.rho, rational(4, 3));
        assert_eq!(rep.determinant, rep.determinant_formula);
        assert!(rep.holds, "{rep:?}");
    }

    #[test]
    fn infeasible_sink_is_vacuous() {
        let u = Matroid::uniform(4, 2).unwrap();
        let rep = sink_hyperbolic(u.complex(), &[0, 1, 2], &WeightProfile::unweighted());
        assert!(!rep.feasible && rep.holds);
    }

    #[test]
    fn parallel_classes_in_graphic() {
        // Triangle plus pendant edge: from α = (0) the two other triangle
        // edges are parallel.
        let m = Matroid::graphic(&[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let rep = sink_hyperbolic(m.complex(), &[0], &WeightProfile::unweighted());
        assert_eq!(rep.classes, vec![vec![1, 2], vec![3]]);
        assert!(rep.transitive && rep.rows_agree && rep.holds);
    }
}
