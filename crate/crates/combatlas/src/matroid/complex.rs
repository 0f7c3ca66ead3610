use std::collections::HashSet;

use super::MatroidError;

/// Largest ground set accepted; faces are stored as `u64` bitmasks and
/// several constructors enumerate all subsets.
pub const MAX_GROUND_SET: usize = 24;

pub fn mask_of(elements: &[usize]) -> u64 {
    elements.iter().fold(0u64, |m, &x| m | (1u64 << x))
}

pub fn elements_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Downward-closed family of subsets of `{0, .., n-1}`, always containing ∅.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    /// Faces grouped by cardinality, each group sorted.
    by_size: Vec<Vec<u64>>,
    lookup: HashSet<u64>,
}

impl SimplicialComplex {
    /// Validates downward closure. The empty face is added implicitly.
    pub fn from_faces(n: usize, faces: impl IntoIterator<Item = u64>) -> Result<Self, MatroidError> {
        if n > MAX_GROUND_SET {
            return Err(MatroidError::GroundSetTooLarge { n, max: MAX_GROUND_SET });
        }
        let mut lookup: HashSet<u64> = HashSet::from([0u64]);
        for f in faces {
            if n < 64 && f >> n != 0 {
                return Err(MatroidError::ElementOutOfRange { set: elements_of(f), n });
            }
            lookup.insert(f);
        }
        for &f in &lookup {
            for x in elements_of(f) {
                let sub = f & !(1u64 << x);
                if !lookup.contains(&sub) {
                    return Err(MatroidError::NotDownwardClosed { face: elements_of(f), missing: elements_of(sub) });
                }
            }
        }
        Ok(Self::from_lookup(n, lookup))
    }

    /// Smallest complex containing every given set.
    pub fn downward_closure(n: usize, sets: impl IntoIterator<Item = u64>) -> Result<Self, MatroidError> {
        if n > MAX_GROUND_SET {
            return Err(MatroidError::GroundSetTooLarge { n, max: MAX_GROUND_SET });
        }
        let mut lookup: HashSet<u64> = HashSet::from([0u64]);
        let mut stack: Vec<u64> = Vec::new();
        for s in sets {
            if n < 64 && s >> n != 0 {
                return Err(MatroidError::ElementOutOfRange { set: elements_of(s), n });
            }
            stack.push(s);
        }
        while let Some(f) = stack.pop() {
            if lookup.insert(f) {
                for x in elements_of(f) {
                    stack.push(f & !(1u64 << x));
                }
            }
        }
        Ok(Self::from_lookup(n, lookup))
    }

    fn from_lookup(n: usize, lookup: HashSet<u64>) -> Self {
        let rank = lookup.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
        let mut by_size = vec![Vec::new(); rank + 1];
        for &f in &lookup {
            by_size[f.count_ones() as usize].push(f);
        }
        for group in &mut by_size {
            group.sort_unstable();
        }
        SimplicialComplex { n, by_size, lookup }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// Largest face cardinality.
    pub fn rank(&self) -> usize {
        self.by_size.len() - 1
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.lookup.contains(&mask)
    }

    pub fn faces_of_size(&self, k: usize) -> &[u64] {
        self.by_size.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All faces ordered by size, then by mask.
    pub fn faces(&self) -> impl Iterator<Item = u64> + '_ {
        self.by_size.iter().flatten().copied()
    }

    pub fn face_count(&self) -> usize {
        self.lookup.len()
    }

    /// `I(k)` = number of faces of size `k`, for `k = 0..=rank`.
    pub fn independence_profile(&self) -> Vec<u64> {
        self.by_size.iter().map(|g| g.len() as u64).collect()
    }

    /// Number of faces of size `|base| + extra` containing `base`.
    pub fn extension_count(&self, base: u64, extra: usize) -> u64 {
        let size = base.count_ones() as usize + extra;
        self.faces_of_size(size).iter().filter(|&&f| f & base == base).count() as u64
    }

    /// Restriction to `elements`, relabeled `0..elements.len()` in the given order.
    pub fn restrict(&self, elements: &[usize]) -> SimplicialComplex {
        let keep = mask_of(elements);
        let relabel = |f: u64| elements.iter().enumerate().filter(|(_, &x)| f >> x & 1 == 1).fold(0u64, |m, (i, _)| m | 1 << i);
        let faces: HashSet<u64> = self.lookup.iter().filter(|&&f| f & !keep == 0).map(|&f| relabel(f)).collect();
        Self::from_lookup(elements.len(), faces)
    }

    /// First pair `(S, T)` with `|T| = |S| + 1` and no `y ∈ T \ S` such that
    /// `S ∪ {y}` is a face. For hereditary families this is equivalent to the
    /// exchange property over all `|S| < |T|`.
    pub fn exchange_violation(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        for k in 0..self.rank() {
            for &s in self.faces_of_size(k) {
                for &t in self.faces_of_size(k + 1) {
                    let augment = elements_of(t & !s).into_iter().any(|y| self.contains(s | 1 << y));
                    if !augment {
                        return Some((elements_of(s), elements_of(t)));
                    }
                }
            }
        }
        None
    }
}

/// A simplicial complex with the exchange property verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    complex: SimplicialComplex,
}

impl Matroid {
    pub fn new(complex: SimplicialComplex) -> Result<Self, MatroidError> {
        match complex.exchange_violation() {
            Some((s, t)) => Err(MatroidError::ExchangeViolation { s, t }),
            None => Ok(Matroid { complex }),
        }
    }

    /// `U(k, n)`: all subsets of size at most `k`.
    pub fn uniform(n: usize, k: usize) -> Result<Self, MatroidError> {
        if k > n {
            return Err(MatroidError::BadUniform { n, k });
        }
        if n > MAX_GROUND_SET {
            return Err(MatroidError::GroundSetTooLarge { n, max: MAX_GROUND_SET });
        }
        let faces = (0u64..1 << n).filter(|f| f.count_ones() as usize <= k);
        Ok(Matroid { complex: SimplicialComplex::from_lookup(n, faces.collect()) })
    }

    /// Cycle matroid: edge subsets without cycles, edges indexed in order.
    pub fn graphic(edges: &[(usize, usize)]) -> Result<Self, MatroidError> {
        let m = edges.len();
        if m > MAX_GROUND_SET {
            return Err(MatroidError::GroundSetTooLarge { n: m, max: MAX_GROUND_SET });
        }
        let vertices = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        let mut seen = HashSet::new();
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a == b {
                return Err(MatroidError::MalformedGraph(format!("edge {i} is a loop at vertex {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(MatroidError::MalformedGraph(format!("edge {i} duplicates {{{a},{b}}}")));
            }
        }
        let faces = (0u64..1 << m).filter(|&f| is_forest(vertices, edges, f));
        Ok(Matroid { complex: SimplicialComplex::from_lookup(m, faces.collect()) })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn ground_size(&self) -> usize {
        self.complex.ground_size()
    }

    pub fn rank(&self) -> usize {
        self.complex.rank()
    }

    pub fn independence_profile(&self) -> Vec<u64> {
        self.complex.independence_profile()
    }

    /// Restrictions of matroids are matroids.
    pub fn restrict(&self, elements: &[usize]) -> Matroid {
        Matroid { complex: self.complex.restrict(elements) }
    }
}

fn is_forest(vertices: usize, edges: &[(usize, usize)], mask: u64) -> bool {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in elements_of(mask) {
        let (a, b) = edges[i];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Edge list of the complete graph on `n` vertices, lexicographic.
pub fn complete_graph(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect()
}
