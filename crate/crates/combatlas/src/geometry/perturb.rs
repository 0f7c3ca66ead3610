use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::atype::{family_atype, PolytopeFamily};
use super::halfspace::{dot, gram_schmidt, null_direction, subsets, HalfspaceSystem, MAX_FACETS};
use super::GeometryError;

#[derive(Clone, Copy, Debug)]
pub struct PerturbOptions {
    pub seed: u64,
    pub retries: usize,
    /// Incidence tolerance.
    pub eps: f64,
}

impl Default for PerturbOptions {
    fn default() -> Self {
        PerturbOptions { seed: 0, retries: 8, eps: 1e-9 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PerturbInfo {
    pub epsilon: f64,
    pub normals: usize,
    /// Support vector of the common summand `Q` over the shared normals.
    pub q_support: Vec<f64>,
    /// Number of generic offset jitters applied to `Q` before the family became simple.
    pub attempts: usize,
}

/// Vertices and edge directions of a convex body.
struct Body {
    points: Vec<Vec<f64>>,
    edges: Vec<Vec<f64>>,
}

fn body(sys: &HalfspaceSystem, eps: f64) -> Result<Body, GeometryError> {
    let sys = sys.normalized();
    let m = sys.dim();
    let vs = sys.vertices(eps)?;
    let mut edges = Vec::new();
    for (a, va) in vs.iter().enumerate() {
        for vb in &vs[a + 1..] {
            let common: Vec<Vec<f64>> = va.tight.iter().filter(|k| vb.tight.contains(k)).map(|&k| sys.normals[k].clone()).collect();
            if gram_schmidt(common, m, 1e-9).len() == m - 1 {
                edges.push(va.point.iter().zip(&vb.point).map(|(x, y)| y - x).collect());
            }
        }
    }
    Ok(Body { points: vs.into_iter().map(|v| v.point).collect(), edges })
}

fn support(points: &[Vec<f64>], u: &[f64]) -> f64 {
    points.iter().map(|p| dot(p, u)).fold(f64::NEG_INFINITY, f64::max)
}

/// Facet normals of the Minkowski sum of `bodies`: directions normal to
/// `m - 1` edge directions where the summed face has dimension `m - 1`.
fn sum_facet_normals(bodies: &[Body], m: usize, eps: f64) -> Vec<Vec<f64>> {
    if m == 1 {
        return vec![vec![1.0], vec![-1.0]];
    }
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for e in bodies.iter().flat_map(|b| &b.edges) {
        let n = dot(e, e).sqrt();
        let e: Vec<f64> = e.iter().map(|x| x / n).collect();
        if !dirs.iter().any(|d| dot(d, &e).abs() > 1.0 - 1e-9) {
            dirs.push(e);
        }
    }
    let mut normals: Vec<Vec<f64>> = Vec::new();
    for subset in subsets(dirs.len(), m - 1) {
        let rows: Vec<Vec<f64>> = subset.iter().map(|&k| dirs[k].clone()).collect();
        let Some(d) = null_direction(&rows) else { continue };
        for sign in [1.0, -1.0] {
            let u: Vec<f64> = d.iter().map(|x| sign * x).collect();
            if normals.iter().any(|v| dot(v, &u) > 1.0 - 1e-9) {
                continue;
            }
            let mut diffs = Vec::new();
            for b in bodies {
                let top = support(&b.points, &u);
                let scale = b.points.iter().map(|p| dot(p, p).sqrt()).fold(1.0, f64::max);
                let face: Vec<&Vec<f64>> = b.points.iter().filter(|p| dot(p, &u) >= top - eps * scale).collect();
                diffs.extend(face.iter().skip(1).map(|p| p.iter().zip(face[0]).map(|(x, y)| x - y).collect::<Vec<f64>>()));
            }
            if gram_schmidt(diffs, m, 1e-9).len() == m - 1 {
                normals.push(u);
            }
        }
    }
    normals.sort_by(|a, b| a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));
    normals
}

/// `{X + εQ}` with `Q` the Minkowski sum of all bodies, over the facet
/// normals of `Q`. When `Q` is not simple its offsets are jittered by a small
/// seeded amount, which refines its normal fan without adding normals.
pub fn perturb_family(bodies: &[(String, HalfspaceSystem)], epsilon: f64, opts: &PerturbOptions) -> Result<(PolytopeFamily, PerturbInfo), GeometryError> {
    if !(epsilon > 0.0) {
        return Err(GeometryError::BadEpsilon(epsilon));
    }
    let first = bodies.first().ok_or(GeometryError::NoBodies)?;
    let m = first.1.dim();
    let mut parsed = Vec::with_capacity(bodies.len());
    for (name, sys) in bodies {
        if sys.dim() != m {
            return Err(GeometryError::DimensionMismatch { expected: m, found: sys.dim() }.in_body(name));
        }
        parsed.push(body(sys, opts.eps).map_err(|e| e.in_body(name))?);
    }
    let normals = sum_facet_normals(&parsed, m, opts.eps);
    if normals.len() > MAX_FACETS {
        return Err(GeometryError::TooLarge { dim: m, facets: normals.len() });
    }
    let hx: Vec<Vec<f64>> = parsed.iter().map(|b| normals.iter().map(|u| support(&b.points, u)).collect()).collect();
    let hq: Vec<f64> = (0..normals.len()).map(|k| hx.iter().map(|h| h[k]).sum()).collect();
    let scale = hq.iter().fold(1.0f64, |a, x| a.max(x.abs()));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut last = None;
    for attempt in 0..=opts.retries {
        let q: Vec<f64> = if attempt == 0 {
            hq.clone()
        } else {
            let size = 1e-3 * scale / (1u64 << (attempt - 1)) as f64;
            hq.iter().map(|x| x + size * rng.gen::<f64>()).collect()
        };
        let members = bodies.iter().zip(&hx).map(|((name, _), h)| (name.clone(), h.iter().zip(&q).map(|(a, b)| a + epsilon * b).collect())).collect();
        match family_atype(normals.clone(), members, opts.eps) {
            Ok(fam) => return Ok((fam, PerturbInfo { epsilon, normals: normals.len(), q_support: q, attempts: attempt })),
            Err(e) if e.is_combinatorial() => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(GeometryError::RetryCapExceeded { retries: opts.retries, last: Box::new(last.expect("at least one attempt")) })
}
