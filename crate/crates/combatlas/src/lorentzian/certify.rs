use num_traits::Signed;
use serde::Serialize;

use super::polynomial::{hessian, simplex, HomogeneousPolynomial, Monomial, SupportSet};
use super::LorentzianError;
use crate::linalg::{exact_inertia, int, Inertia, Rational, SymmetricMatrix};

/// `(m, n, i)` with `m_i > n_i` and no admissible exchange `m - e_i + e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MConvexWitness {
    pub m: Monomial,
    pub n: Monomial,
    pub i: usize,
}

/// Scans pairs in decreasing lexicographic order.
pub fn m_convex_violation(j: &SupportSet) -> Option<MConvexWitness> {
    for m in j.iter().rev() {
        for n in j.iter().rev() {
            for i in 0..m.len() {
                if m[i] <= n[i] {
                    continue;
                }
                let exchange = (0..m.len()).any(|k| {
                    if m[k] >= n[k] {
                        return false;
                    }
                    let mut moved = m.clone();
                    moved[i] -= 1;
                    moved[k] += 1;
                    j.contains(&moved)
                });
                if !exchange {
                    return Some(MConvexWitness { m: m.clone(), n: n.clone(), i });
                }
            }
        }
    }
    None
}

pub fn is_m_convex(j: &SupportSet) -> bool {
    m_convex_violation(j).is_none()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LorentzianWitness {
    NegativeCoefficient {
        exponent: Monomial,
        #[serde(serialize_with = "crate::io::serialize_rational")]
        coefficient: Rational,
    },
    Support(MConvexWitness),
    Hessian {
        derivative: Monomial,
        inertia: Inertia,
        #[serde(serialize_with = "crate::io::serialize_matrix")]
        matrix: SymmetricMatrix<Rational>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LorentzianReport {
    pub variables: usize,
    pub degree: u32,
    pub nonnegative: bool,
    pub m_convex: bool,
    pub hessians_checked: usize,
    pub witness: Option<LorentzianWitness>,
    pub holds: bool,
}

/// Nonnegativity, M-convex support, then OPE of the (constant) Hessian of
/// `∂^m f` for every `m ∈ Δ_n^{d-2}`; stops at the first failure.
pub fn is_lorentzian(f: &HomogeneousPolynomial) -> Result<LorentzianReport, LorentzianError> {
    if f.degree() < 2 {
        return Err(LorentzianError::DegreeTooSmall { degree: f.degree(), needed: 2 });
    }
    if f.is_zero() {
        return Err(LorentzianError::ZeroPolynomial);
    }
    let mut report = LorentzianReport {
        variables: f.variables(),
        degree: f.degree(),
        nonnegative: true,
        m_convex: true,
        hessians_checked: 0,
        witness: None,
        holds: false,
    };
    if let Some((m, c)) = f.terms().iter().find(|(_, c)| c.is_negative()) {
        report.nonnegative = false;
        report.witness = Some(LorentzianWitness::NegativeCoefficient { exponent: m.clone(), coefficient: c.clone() });
        return Ok(report);
    }
    if let Some(w) = m_convex_violation(&f.support()) {
        report.m_convex = false;
        report.witness = Some(LorentzianWitness::Support(w));
        return Ok(report);
    }
    let ones = vec![int(1); f.variables()];
    for m in simplex(f.variables(), f.degree() - 2) {
        let g = f.derivative(&m);
        report.hessians_checked += 1;
        if g.is_zero() {
            continue;
        }
        let h = hessian(&g, &ones)?;
        let inertia = exact_inertia(&h);
        if inertia.n_pos > 1 {
            report.witness = Some(LorentzianWitness::Hessian { derivative: m, inertia, matrix: h });
            return Ok(report);
        }
    }
    report.holds = true;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;
    use crate::lorentzian::basis_polynomial;
    use crate::matroid::Matroid;

    fn support(ms: &[&[u32]]) -> SupportSet {
        ms.iter().map(|m| m.to_vec()).collect()
    }

    fn poly(n: usize, terms: &[(&[u32], i64)]) -> HomogeneousPolynomial {
        let d = terms[0].0.iter().sum();
        HomogeneousPolynomial::new(n, d, terms.iter().map(|(m, c)| (m.to_vec(), int(*c)))).unwrap()
    }

    #[test]
    fn m_convexity() {
        assert!(is_m_convex(&support(&[&[1, 1]])));
        let w = m_convex_violation(&support(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(w, MConvexWitness { m: vec![2, 0], n: vec![0, 2], i: 0 });
        assert!(is_m_convex(&support(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]])));
    }

    #[test]
    fn certification_examples() {
        let sq = poly(2, &[(&[2, 0], 1), (&[0, 2], 1)]);
        let rep = is_lorentzian(&sq).unwrap();
        assert!(!rep.holds && matches!(rep.witness, Some(LorentzianWitness::Support(_))));
        let e3 = poly(3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 1), (&[0, 1, 1], 1)]);
        assert!(is_lorentzian(&e3).unwrap().holds);
        assert!(is_lorentzian(&poly(2, &[(&[1, 1], 2)])).unwrap().holds);
    }

    #[test]
    fn hessian_failure_witness() {
        let square = poly(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]);
        assert!(is_lorentzian(&square.scale(&rational(3, 2))).unwrap().holds);
        // Hessian [[2,1],[1,2]] has two positive eigenvalues.
        let f = poly(2, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)]);
        assert!(!is_lorentzian(&f).unwrap().holds);
        let bad = poly(3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1), (&[1, 1, 0], 1), (&[1, 0, 1], 1), (&[0, 1, 1], 1)]);
        let rep = is_lorentzian(&bad).unwrap();
        assert!(rep.m_convex && !rep.holds);
        assert!(matches!(rep.witness, Some(LorentzianWitness::Hessian { .. })));
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(matches!(is_lorentzian(&basis_polynomial(&Matroid::uniform(2, 1).unwrap())), Err(LorentzianError::DegreeTooSmall { .. })));
        assert!(matches!(is_lorentzian(&HomogeneousPolynomial::zero(2, 2)), Err(LorentzianError::ZeroPolynomial)));
        let neg = poly(2, &[(&[1, 1], -1)]);
        assert!(matches!(is_lorentzian(&neg).unwrap().witness, Some(LorentzianWitness::NegativeCoefficient { .. })));
    }
}
