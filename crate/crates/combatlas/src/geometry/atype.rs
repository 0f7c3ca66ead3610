use std::collections::BTreeSet;
use std::sync::OnceLock;

use super::halfspace::{dot, gram_schmidt, norm, standard_basis, HalfspaceSystem, Vertex, MAX_DIM, MAX_FACETS};
use super::GeometryError;

/// Normals, facet adjacency and angles shared by strongly isomorphic simple
/// polytopes. Facet a-types live in `u_i^⊥` with an orthonormal basis whose
/// first axis points along the first adjacent facet normal.
#[derive(Clone, Debug)]
pub struct AType {
    dim: usize,
    normals: Vec<Vec<f64>>,
    vertex_sets: Vec<Vec<usize>>,
    neighbors: Vec<Vec<usize>>,
    cos: Vec<Vec<f64>>,
    facets: OnceLock<Vec<FacetType>>,
}

/// The a-type of facet `i`, with its normals indexed by `J(i)`.
#[derive(Clone, Debug)]
pub struct FacetType {
    pub atype: AType,
    /// Local index → index of the adjacent facet in the parent.
    pub globals: Vec<usize>,
    pub csc: Vec<f64>,
    pub cot: Vec<f64>,
    /// Orthonormal basis of `u_i^⊥` in parent coordinates.
    pub basis: Vec<Vec<f64>>,
}

impl FacetType {
    pub fn local(&self, j: usize) -> Option<usize> {
        self.globals.binary_search(&j).ok()
    }
}

impl AType {
    /// `vertex_sets` lists, for every vertex, the `dim` facets through it.
    pub(crate) fn from_parts(dim: usize, normals: Vec<Vec<f64>>, mut vertex_sets: Vec<Vec<usize>>) -> Self {
        let r = normals.len();
        vertex_sets.iter_mut().for_each(|s| s.sort_unstable());
        vertex_sets.sort();
        vertex_sets.dedup();
        let mut adj = vec![BTreeSet::new(); r];
        if dim >= 2 {
            for s in &vertex_sets {
                for &a in s {
                    for &b in s {
                        if a != b {
                            adj[a].insert(b);
                        }
                    }
                }
            }
        }
        let cos = (0..r).map(|i| (0..r).map(|j| dot(&normals[i], &normals[j]).clamp(-1.0, 1.0)).collect()).collect();
        AType { dim, normals, vertex_sets, neighbors: adj.into_iter().map(|s| s.into_iter().collect()).collect(), cos, facets: OnceLock::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of facet normals `r`.
    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[Vec<f64>] {
        &self.normals
    }

    pub fn vertex_sets(&self) -> &[Vec<usize>] {
        &self.vertex_sets
    }

    /// `J(i)`, sorted.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.neighbors[i].binary_search(&j).is_ok()
    }

    /// Pairs `(i, j)` of `J` with `i < j`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|i| self.neighbors[i].iter().filter(move |&&j| j > i).map(move |&j| (i, j))).collect()
    }

    pub fn cos(&self, i: usize, j: usize) -> f64 {
        self.cos[i][j]
    }

    pub fn theta(&self, i: usize, j: usize) -> Option<f64> {
        self.is_adjacent(i, j).then(|| self.cos[i][j].acos())
    }

    pub fn facets(&self) -> &[FacetType] {
        self.facets.get_or_init(|| if self.dim < 2 { Vec::new() } else { (0..self.len()).map(|i| self.build_facet(i)).collect() })
    }

    pub fn facet(&self, i: usize) -> &FacetType {
        &self.facets()[i]
    }

    fn build_facet(&self, i: usize) -> FacetType {
        let ui = &self.normals[i];
        let globals = self.neighbors[i].clone();
        let mut csc = Vec::with_capacity(globals.len());
        let mut cot = Vec::with_capacity(globals.len());
        let mut projected = Vec::with_capacity(globals.len());
        for &j in &globals {
            let c = self.cos[i][j];
            let s = (1.0 - c * c).max(0.0).sqrt();
            csc.push(1.0 / s);
            cot.push(c / s);
            projected.push(self.normals[j].iter().zip(ui).map(|(a, b)| (a - c * b) / s).collect::<Vec<f64>>());
        }
        let candidates = std::iter::once(ui.clone()).chain(projected.iter().cloned()).chain(standard_basis(self.dim));
        let mut basis = gram_schmidt(candidates, self.dim, 1e-9);
        basis.remove(0);
        let normals: Vec<Vec<f64>> = projected
            .iter()
            .map(|p| {
                let v: Vec<f64> = basis.iter().map(|b| dot(b, p)).collect();
                let n = norm(&v);
                v.into_iter().map(|x| x / n).collect()
            })
            .collect();
        let vertex_sets = self
            .vertex_sets
            .iter()
            .filter(|s| s.contains(&i))
            .map(|s| s.iter().filter(|&&j| j != i).map(|j| globals.binary_search(j).expect("vertex facets are adjacent")).collect())
            .collect();
        FacetType { atype: AType::from_parts(self.dim - 1, normals, vertex_sets), globals, csc, cot, basis }
    }

    /// Support vector of facet `i` over `J(i)`:
    /// `h_j csc θ_ij - h_i cot θ_ij`.
    pub fn facet_support(&self, h: &[f64], i: usize) -> Vec<f64> {
        let f = self.facet(i);
        f.globals.iter().enumerate().map(|(k, &j)| h[j] * f.csc[k] - h[i] * f.cot[k]).collect()
    }

    /// Support vector of `P + t`.
    pub fn translate(&self, h: &[f64], t: &[f64]) -> Vec<f64> {
        h.iter().zip(&self.normals).map(|(hi, u)| hi + dot(u, t)).collect()
    }

    /// The `m` rows of this a-type's halfspace system with offsets `h`.
    pub fn system(&self, h: &[f64]) -> HalfspaceSystem {
        HalfspaceSystem { normals: self.normals.clone(), offsets: h.to_vec() }
    }

    /// Checks that `h` describes a simple polytope of this a-type.
    pub fn validate_support(&self, h: &[f64], eps: f64) -> Result<Vec<Vertex>, GeometryError> {
        if h.len() != self.len() {
            return Err(GeometryError::OffsetCount { expected: self.len(), found: h.len() });
        }
        let vertices = self.system(h).vertices(eps)?;
        let sets = simple_vertex_sets(&vertices, self.dim, self.len())?;
        if sets != self.vertex_sets {
            return Err(GeometryError::AdjacencyMismatch);
        }
        Ok(vertices)
    }
}

fn simple_vertex_sets(vertices: &[Vertex], dim: usize, r: usize) -> Result<Vec<Vec<usize>>, GeometryError> {
    if let Some(v) = vertices.iter().find(|v| v.tight.len() != dim) {
        return Err(GeometryError::NotSimple { point: v.point.clone(), facets: v.tight.clone() });
    }
    let mut sets: Vec<Vec<usize>> = vertices.iter().map(|v| v.tight.clone()).collect();
    sets.sort();
    let on_some: BTreeSet<usize> = sets.iter().flatten().copied().collect();
    if let Some(i) = (0..r).find(|i| !on_some.contains(i)) {
        return Err(GeometryError::EmptyFacet(i));
    }
    Ok(sets)
}

/// Strongly isomorphic simple polytopes over one a-type.
#[derive(Clone, Debug)]
pub struct PolytopeFamily {
    pub atype: AType,
    pub names: Vec<String>,
    pub members: Vec<Vec<f64>>,
    pub vertices: Vec<Vec<Vertex>>,
}

impl PolytopeFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.atype.dim()
    }

    pub fn index(&self, name: &str) -> Result<usize, GeometryError> {
        self.names.iter().position(|n| n == name).ok_or_else(|| GeometryError::UnknownBody(name.to_string()))
    }

    pub fn support(&self, k: usize) -> &[f64] {
        &self.members[k]
    }

    /// Average of the vertices of member `k`; an interior point.
    pub fn centroid(&self, k: usize) -> Vec<f64> {
        let vs = &self.vertices[k];
        let mut c = vec![0.0; self.dim()];
        for v in vs {
            c.iter_mut().zip(&v.point).for_each(|(a, b)| *a += b);
        }
        c.iter_mut().for_each(|a| *a /= vs.len() as f64);
        c
    }

    /// Support vector of member `k` translated so its centroid is the origin.
    pub fn centered_support(&self, k: usize) -> Vec<f64> {
        let c: Vec<f64> = self.centroid(k).iter().map(|x| -x).collect();
        self.atype.translate(&self.members[k], &c)
    }

    /// Validates `h` against the a-type and appends it.
    pub fn push(&mut self, name: impl Into<String>, h: Vec<f64>, eps: f64) -> Result<usize, GeometryError> {
        let name = name.into();
        let vertices = self.atype.validate_support(&h, eps).map_err(|e| e.in_body(&name))?;
        self.names.push(name);
        self.members.push(h);
        self.vertices.push(vertices);
        Ok(self.members.len() - 1)
    }
}

/// Validates a family of halfspace systems over shared normals: bounded,
/// full-dimensional, simple, every facet nonempty, and one vertex–facet
/// structure for all members. Normals are rescaled to unit length.
pub fn family_atype(normals: Vec<Vec<f64>>, bodies: Vec<(String, Vec<f64>)>, eps: f64) -> Result<PolytopeFamily, GeometryError> {
    if bodies.is_empty() {
        return Err(GeometryError::NoBodies);
    }
    let count = normals.len();
    let probe = HalfspaceSystem::new(normals, vec![0.0; count])?;
    let (dim, r) = (probe.dim(), probe.len());
    if dim > MAX_DIM || r > MAX_FACETS {
        return Err(GeometryError::TooLarge { dim, facets: r });
    }
    let scales: Vec<f64> = probe.normals.iter().map(|u| norm(u)).collect();
    let unit = probe.normalized().normals;
    let mut reference: Option<(String, Vec<Vec<usize>>)> = None;
    let mut family = PolytopeFamily { atype: AType::from_parts(dim, unit.clone(), vec![]), names: vec![], members: vec![], vertices: vec![] };
    for (name, offsets) in bodies {
        if offsets.len() != r {
            return Err(GeometryError::OffsetCount { expected: r, found: offsets.len() }.in_body(&name));
        }
        let h: Vec<f64> = offsets.iter().zip(&scales).map(|(h, s)| h / s).collect();
        let sys = HalfspaceSystem::new(unit.clone(), h.clone()).map_err(|e| e.in_body(&name))?;
        let vertices = sys.vertices(eps).map_err(|e| e.in_body(&name))?;
        let sets = simple_vertex_sets(&vertices, dim, r).map_err(|e| e.in_body(&name))?;
        match &reference {
            None => reference = Some((name.clone(), sets)),
            Some((_, first)) if *first == sets => {}
            Some((first_name, _)) => return Err(GeometryError::Mismatch { body: name, reference: first_name.clone() }),
        }
        family.names.push(name);
        family.members.push(h);
        family.vertices.push(vertices);
    }
    let (_, sets) = reference.expect("at least one body");
    family.atype = AType::from_parts(dim, unit, sets);
    for (i, j) in family.atype.pairs() {
        let c = family.atype.cos(i, j);
        if 1.0 - c.abs() <= eps {
            return Err(GeometryError::Degenerate(format!("adjacent facets {i} and {j} have parallel normals")));
        }
    }
    Ok(family)
}
