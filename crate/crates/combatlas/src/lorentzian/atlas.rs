use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::certify::is_lorentzian;
use super::polynomial::{hessian, simplex, HomogeneousPolynomial, Monomial};
use super::LorentzianError;
use crate::atlas::{check_property, verify_local_global, Atlas, EdgeTransform, Property, PropertyReport};
use crate::linalg::{check_ope, int, Rational};

/// The atlas of `f` at `w` with its vertex words (as exponent vectors).
#[derive(Clone, Debug)]
pub struct LorentzianAtlas {
    pub atlas: Atlas<Rational>,
    pub words: BTreeMap<String, Monomial>,
    pub root: String,
    pub degree: u32,
}

/// Vertex id of the multiset word with exponent vector `m`, e.g. `(0,0,2)`.
pub fn word_id(m: &[u32]) -> String {
    let letters: Vec<String> = m.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat(i.to_string()).take(e as usize)).collect();
    format!("({})", letters.join(","))
}

/// Words are stored as multisets since derivatives commute. Level `m` holds
/// the words of length `d - 2 - m`; `M_v = H_{∂^α f}(w)` and `h_v = w / m`
/// for `m >= 1`. Sinks carry `h = 0`.
pub fn lorentzian_atlas(f: &HomogeneousPolynomial, w: &[Rational]) -> Result<LorentzianAtlas, LorentzianError> {
    let d = f.degree();
    if d < 3 {
        return Err(LorentzianError::DegreeTooSmall { degree: d, needed: 3 });
    }
    let n = f.variables();
    if w.len() != n {
        return Err(LorentzianError::PointLength { expected: n, found: w.len() });
    }
    if let Some(i) = w.iter().position(|x| !x.is_positive()) {
        return Err(LorentzianError::NonPositivePoint(i));
    }
    let mut atlas = Atlas::new(n);
    let mut words = BTreeMap::new();
    for len in 0..=(d - 2) {
        let m = d - 2 - len;
        for alpha in simplex(n, len) {
            let id = word_id(&alpha);
            let g = f.derivative(&alpha);
            let matrix = hessian(&g, w)?;
            let h = if m == 0 { vec![Rational::zero(); n] } else { w.iter().map(|x| x / int(m as i64)).collect() };
            atlas.insert_vertex(id.clone(), matrix, h).expect("distinct words");
            words.insert(id, alpha);
        }
    }
    let sources: Vec<(String, Monomial)> = words.iter().filter(|(_, a)| a.iter().sum::<u32>() < d - 2).map(|(k, a)| (k.clone(), a.clone())).collect();
    for (id, alpha) in sources {
        for x in 0..n {
            let mut child = alpha.clone();
            child[x] += 1;
            atlas.add_edge(&id, x, word_id(&child), EdgeTransform::Identity).expect("one edge per letter");
        }
    }
    Ok(LorentzianAtlas { atlas, words, root: word_id(&vec![0; n]), degree: d })
}

#[derive(Clone, Debug, Serialize)]
pub struct AtlasRoute {
    pub vertices: usize,
    pub checks: usize,
    pub failures: Vec<PropertyReport>,
    pub root_local_global: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HessianHypReport {
    pub direct_ope: bool,
    pub atlas: Option<AtlasRoute>,
    pub agree: bool,
    pub holds: bool,
}

/// OPE of `H_f(w)` directly and, for `d >= 3`, through the local–global
/// principle at every non-sink of the atlas.
pub fn verify_hessian_hyp(f: &HomogeneousPolynomial, w: &[Rational]) -> Result<HessianHypReport, LorentzianError> {
    let cert = is_lorentzian(f)?;
    if !cert.holds {
        return Err(LorentzianError::NotLorentzian(cert.witness.map(|w| serde_json::to_string(&w).unwrap_or_default()).unwrap_or_default()));
    }
    if w.iter().any(|x| !x.is_positive()) {
        return Err(LorentzianError::NonPositivePoint(w.iter().position(|x| !x.is_positive()).unwrap_or(0)));
    }
    let direct_ope = check_ope(&hessian(f, w)?);
    let atlas = if f.degree() >= 3 { Some(atlas_route(f, w)?) } else { None };
    let agree = atlas.as_ref().map_or(true, |a| a.root_local_global == direct_ope);
    let holds = direct_ope && agree && atlas.as_ref().map_or(true, |a| a.holds);
    Ok(HessianHypReport { direct_ope, atlas, agree, holds })
}

fn atlas_route(f: &HomogeneousPolynomial, w: &[Rational]) -> Result<AtlasRoute, LorentzianError> {
    let la = lorentzian_atlas(f, w)?;
    let a = &la.atlas;
    let mut failures = Vec::new();
    let mut checks = 0;
    let mut root_local_global = false;
    for v in a.vertices() {
        let mut props = vec![Property::Ope];
        if !v.is_sink() {
            props.extend([Property::Inh, Property::TInv, Property::Iden, Property::DecSupp, Property::Irr, Property::HPos]);
        }
        for p in props {
            checks += 1;
            let r = check_property(a, &v.id, p).expect("vertex exists");
            if !r.holds {
                failures.push(r);
            }
        }
        if !v.is_sink() {
            checks += 1;
            let r = verify_local_global(a, &v.id).expect("non-sink");
            if v.id == la.root {
                root_local_global = r.holds;
            }
            if !r.holds {
                failures.push(r.summary());
            }
        }
    }
    let holds = failures.is_empty();
    Ok(AtlasRoute { vertices: a.len(), checks, failures, root_local_global, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;
    use crate::lorentzian::basis_polynomial;
    use crate::matroid::Matroid;

    #[test]
    fn cubic_in_two_variables() {
        let f = HomogeneousPolynomial::new(2, 3, [(vec![2, 1], int(1)), (vec![1, 2], int(1))]).unwrap();
        let la = lorentzian_atlas(&f, &[int(1), int(2)]).unwrap();
        let root = la.atlas.vertex("()").unwrap();
        assert_eq!(root.edges[&0].target, "(0)");
        assert_eq!(root.edges[&1].target, "(1)");
        assert_eq!(la.atlas.len(), 3);
        assert_eq!(la.atlas.sinks().count(), 2);
    }

    #[test]
    fn atlas_checks_on_basis_polynomial() {
        let f = basis_polynomial(&Matroid::uniform(5, 3).unwrap());
        let w = vec![int(1), rational(1, 2), int(3), int(2), rational(5, 7)];
        let rep = verify_hessian_hyp(&f, &w).unwrap();
        assert!(rep.holds, "{:?}", rep.atlas.as_ref().map(|a| &a.failures));
        assert!(rep.atlas.unwrap().root_local_global);
    }

    #[test]
    fn hessian_hyp_examples() {
        let e3 = basis_polynomial(&Matroid::uniform(3, 2).unwrap());
        let rep = verify_hessian_hyp(&e3, &[int(1), int(1), int(1)]).unwrap();
        assert!(rep.holds && rep.atlas.is_none());
        let u24 = basis_polynomial(&Matroid::uniform(4, 2).unwrap());
        assert!(verify_hessian_hyp(&u24, &vec![int(1); 4]).unwrap().holds);
        let sq = HomogeneousPolynomial::new(2, 2, [(vec![2, 0], int(1)), (vec![0, 2], int(1))]).unwrap();
        assert!(matches!(verify_hessian_hyp(&sq, &[int(1), int(1)]), Err(LorentzianError::NotLorentzian(_))));
    }

    #[test]
    fn support_formula() {
        let f = basis_polynomial(&Matroid::uniform(4, 3).unwrap());
        let la = lorentzian_atlas(&f, &vec![int(1); 4]).unwrap();
        for (id, alpha) in &la.words {
            let v = la.atlas.vertex(id).unwrap();
            let expected: Vec<usize> = (0..4).filter(|&i| !f.derivative(alpha).partial(i).is_zero()).collect();
            assert_eq!(crate::linalg::support(&v.matrix).as_slice(), expected.as_slice(), "{id}");
        }
    }

    #[test]
    fn rejects_bad_points() {
        let f = basis_polynomial(&Matroid::uniform(4, 3).unwrap());
        assert!(matches!(lorentzian_atlas(&f, &[int(1), int(0), int(1), int(1)]), Err(LorentzianError::NonPositivePoint(1))));
        let e3 = basis_polynomial(&Matroid::uniform(3, 2).unwrap());
        assert!(matches!(lorentzian_atlas(&e3, &vec![int(1); 3]), Err(LorentzianError::DegreeTooSmall { .. })));
    }
}
