use std::collections::HashMap;

use serde::Serialize;

use super::atlas::{local_matrix_mask, WeightProfile};
use super::complex::{elements_of, SimplicialComplex};
use crate::linalg::{exact_inertia, Inertia, Rational, SymmetricMatrix};

/// A face `U`, an extension `x`, and a pair `{y, z}` whose restricted
/// sink matrix on `{x, y, z, *}` has two positive eigenvalues.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AbsWitness {
    pub u: Vec<usize>,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    #[serde(serialize_with = "crate::io::serialize_matrix")]
    pub matrix: SymmetricMatrix<Rational>,
    pub inertia: Inertia,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecognitionReport {
    /// `(S, T)` with `|T| = |S| + 1` admitting no augmentation.
    pub exchange_violation: Option<(Vec<usize>, Vec<usize>)>,
    pub direct_is_matroid: bool,
    pub atlas_witness: Option<AbsWitness>,
    pub atlas_is_matroid: bool,
    pub triples_checked: usize,
    pub agree: bool,
    pub is_matroid: bool,
}

/// Decides the matroid property directly and through sink hyperbolicity
/// restricted to `{x, y, z, *}`.
pub fn recognize_matroid(c: &SimplicialComplex) -> RecognitionReport {
    let exchange_violation = c.exchange_violation();
    let direct_is_matroid = exchange_violation.is_none();
    let (atlas_witness, triples_checked) = abs_search(c, &mut HashMap::new());
    let atlas_is_matroid = atlas_witness.is_none();
    let agree = direct_is_matroid == atlas_is_matroid;
    RecognitionReport {
        exchange_violation,
        direct_is_matroid,
        atlas_witness,
        atlas_is_matroid,
        triples_checked,
        agree,
        is_matroid: direct_is_matroid && agree,
    }
}

/// Runs the atlas route, memoizing inertia by matrix entries across calls.
pub fn abs_search(c: &SimplicialComplex, memo: &mut HashMap<Vec<Rational>, Inertia>) -> (Option<AbsWitness>, usize) {
    let n = c.ground_size();
    let unweighted = WeightProfile::unweighted();
    let mut checked = 0;
    for size in 0..c.rank().saturating_sub(1) {
        for &u in c.faces_of_size(size) {
            let outside: Vec<usize> = (0..n).filter(|&x| u >> x & 1 == 0).collect();
            let pairs: Vec<(usize, usize)> = outside
                .iter()
                .enumerate()
                .flat_map(|(i, &y)| outside[i + 1..].iter().map(move |&z| (y, z)))
                .filter(|&(y, z)| c.contains(u | 1 << y | 1 << z))
                .collect();
            if pairs.is_empty() {
                continue;
            }
            let a = local_matrix_mask(c, Some(u), size, 1, &unweighted);
            for &x in outside.iter().filter(|&&x| c.contains(u | 1 << x)) {
                for &(y, z) in pairs.iter().filter(|&&(y, z)| y != x && z != x) {
                    checked += 1;
                    let restricted = a.restrict(&[x, y, z, n]);
                    let key: Vec<Rational> = restricted.rows().concat();
                    let inertia = *memo.entry(key).or_insert_with(|| exact_inertia(&restricted));
                    if inertia.n_pos > 1 {
                        let witness = AbsWitness { u: elements_of(u), x, y, z, matrix: restricted, inertia };
                        return (Some(witness), checked);
                    }
                }
            }
        }
    }
    (None, checked)
}

/// Every downward-closed family on `{0, .., n-1}` (all contain ∅), built by
/// deciding subsets in order of size.
pub fn downsets(n: usize) -> Vec<SimplicialComplex> {
    assert!(n <= 6, "exhaustive enumeration is only feasible for tiny ground sets");
    let mut order: Vec<u64> = (1u64..1 << n).collect();
    order.sort_by_key(|s| (s.count_ones(), *s));
    let mut chosen = vec![false; 1 << n];
    chosen[0] = true;
    let mut out = Vec::new();
    fn walk(n: usize, order: &[u64], i: usize, chosen: &mut Vec<bool>, out: &mut Vec<SimplicialComplex>) {
        if i == order.len() {
            let faces = (0..chosen.len() as u64).filter(|&f| chosen[f as usize]);
            out.push(SimplicialComplex::from_faces(n, faces).expect("built downward closed"));
            return;
        }
        let s = order[i];
        walk(n, order, i + 1, chosen, out);
        if elements_of(s).into_iter().all(|x| chosen[(s & !(1 << x)) as usize]) {
            chosen[s as usize] = true;
            walk(n, order, i + 1, chosen, out);
            chosen[s as usize] = false;
        }
    }
    walk(n, &order, 0, &mut chosen, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::matroid::Matroid;

    #[test]
    fn two_disjoint_edges_rejected() {
        let c = SimplicialComplex::from_faces(4, [0b0001, 0b0010, 0b0100, 0b1000, 0b0011, 0b1100]).unwrap();
        let rep = recognize_matroid(&c);
        assert!(!rep.is_matroid && rep.agree);
        let w = rep.atlas_witness.unwrap();
        assert_eq!((w.u.clone(), w.x, w.y, w.z), (vec![], 0, 2, 3));
        let expected = [[0, 0, 0, 1], [0, 0, 1, 1], [0, 1, 0, 1], [1, 1, 1, 1]];
        let expected = SymmetricMatrix::from_rows(expected.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap();
        assert_eq!(w.matrix, expected);
        assert_eq!(w.inertia.n_pos, 2);
    }

    #[test]
    fn matroids_accepted() {
        let rep = recognize_matroid(Matroid::uniform(4, 2).unwrap().complex());
        assert!(rep.is_matroid && rep.agree && rep.atlas_witness.is_none());
        let free = SimplicialComplex::downward_closure(3, [0b111]).unwrap();
        assert!(recognize_matroid(&free).is_matroid);
    }

    #[test]
    fn downset_counts() {
        // Dedekind numbers minus the empty family.
        let counts: Vec<usize> = (0..=4).map(|n| downsets(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 19, 167]);
    }
}
