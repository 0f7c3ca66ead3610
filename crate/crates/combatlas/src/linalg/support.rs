use serde::Serialize;

use super::matrix::SymmetricMatrix;
use super::scalar::Scalar;

/// Sorted distinct indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        IndexSet(indices)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IndexSet::new(iter.into_iter().collect())
    }
}

/// Rows with a nonzero entry.
pub fn support<T: Scalar>(m: &SymmetricMatrix<T>) -> IndexSet {
    (0..m.order()).filter(|&i| m.row(i).iter().any(|x| !x.is_zero())).collect()
}

/// Indices of nonzero coordinates.
pub fn vector_support<T: Scalar>(h: &[T]) -> IndexSet {
    h.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
}

/// Connectivity of the graph on `supp(M)` with edges at nonzero entries.
/// An empty support counts as irreducible.
pub fn irreducible_on_support<T: Scalar>(m: &SymmetricMatrix<T>) -> bool {
    let supp = support(m);
    let Some(start) = supp.iter().next() else { return true };
    let mut seen = vec![false; m.order()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(i) = stack.pop() {
        for j in supp.iter() {
            if !seen[j] && !m.get(i, j).is_zero() {
                seen[j] = true;
                reached += 1;
                stack.push(j);
            }
        }
    }
    reached == supp.len()
}
