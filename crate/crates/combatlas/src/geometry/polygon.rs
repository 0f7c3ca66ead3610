use serde::Serialize;

use super::halfspace::HalfspaceSystem;
use super::GeometryError;

/// Vertices of a planar halfspace system in counterclockwise order.
pub fn polygon_vertices(p: &HalfspaceSystem, eps: f64) -> Result<Vec<[f64; 2]>, GeometryError> {
    if p.dim() != 2 {
        return Err(GeometryError::DimensionMismatch { expected: 2, found: p.dim() });
    }
    let mut pts: Vec<[f64; 2]> = p.vertices(eps)?.into_iter().map(|v| [v.point[0], v.point[1]]).collect();
    if pts.len() < 3 {
        return Err(GeometryError::Degenerate("polygon has fewer than three vertices".into()));
    }
    let n = pts.len() as f64;
    let c = [pts.iter().map(|q| q[0]).sum::<f64>() / n, pts.iter().map(|q| q[1]).sum::<f64>() / n];
    pts.sort_by(|a, b| (a[1] - c[1]).atan2(a[0] - c[0]).total_cmp(&(b[1] - c[1]).atan2(b[0] - c[0])));
    Ok(pts)
}

/// Shoelace area of a counterclockwise polygon.
pub fn shoelace(pts: &[[f64; 2]]) -> f64 {
    let n = pts.len();
    (0..n).map(|i| {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        a[0] * b[1] - a[1] * b[0]
    }).sum::<f64>() / 2.0
}

fn lowest(pts: &[[f64; 2]]) -> usize {
    (0..pts.len()).min_by(|&i, &j| pts[i][1].total_cmp(&pts[j][1]).then(pts[i][0].total_cmp(&pts[j][0]))).expect("nonempty")
}

/// Minkowski sum of two counterclockwise convex polygons by merging edges
/// in angular order.
pub fn minkowski_sum(a: &[[f64; 2]], b: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let (ia, ib) = (lowest(a), lowest(b));
    let a: Vec<[f64; 2]> = (0..a.len()).map(|k| a[(ia + k) % a.len()]).collect();
    let b: Vec<[f64; 2]> = (0..b.len()).map(|k| b[(ib + k) % b.len()]).collect();
    let edge = |p: &[[f64; 2]], k: usize| {
        let (s, t) = (p[k % p.len()], p[(k + 1) % p.len()]);
        [t[0] - s[0], t[1] - s[1]]
    };
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() || j < b.len() {
        out.push([a[i % a.len()][0] + b[j % b.len()][0], a[i % a.len()][1] + b[j % b.len()][1]]);
        let angle = |e: [f64; 2]| e[1].atan2(e[0]).rem_euclid(std::f64::consts::TAU);
        let (ta, tb) = (angle(edge(&a, i)), angle(edge(&b, j)));
        if j == b.len() || (i < a.len() && ta < tb - 1e-12) {
            i += 1;
        } else if i == a.len() || tb < ta - 1e-12 {
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct PolygonMixedArea {
    pub area_a: f64,
    pub area_b: f64,
    pub area_sum: f64,
    /// `(area(A+B) - area(A) - area(B)) / 2`.
    pub mixed: f64,
}

pub fn polygon_mixed_area(a: &HalfspaceSystem, b: &HalfspaceSystem, eps: f64) -> Result<PolygonMixedArea, GeometryError> {
    let pa = polygon_vertices(a, eps)?;
    let pb = polygon_vertices(b, eps)?;
    let area_a = shoelace(&pa);
    let area_b = shoelace(&pb);
    let area_sum = shoelace(&minkowski_sum(&pa, &pb));
    Ok(PolygonMixedArea { area_a, area_b, area_sum, mixed: (area_sum - area_a - area_b) / 2.0 })
}
