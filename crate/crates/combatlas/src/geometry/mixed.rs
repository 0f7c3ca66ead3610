use serde::Serialize;

use super::atype::AType;
use super::halfspace::dot;
use super::GeometryError;
use crate::linalg::SymmetricMatrix;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn check_selection(t: &AType, sel: &[&[f64]], expected: usize) -> Result<(), GeometryError> {
    if sel.len() != expected {
        return Err(GeometryError::SelectionLength { expected, found: sel.len() });
    }
    if let Some(h) = sel.iter().find(|h| h.len() != t.len()) {
        return Err(GeometryError::OffsetCount { expected: t.len(), found: h.len() });
    }
    Ok(())
}

/// `V(P_1, ..., P_m) = (1/m) Σ_i (h_{P_1})_i V(F_2^i, ..., F_m^i)`, down to
/// segments, whose length is `h_+ + h_-`. The empty selection has value 1.
pub fn mixed_volume(t: &AType, sel: &[&[f64]]) -> Result<f64, GeometryError> {
    check_selection(t, sel, t.dim())?;
    Ok(mv(t, sel))
}

fn mv(t: &AType, sel: &[&[f64]]) -> f64 {
    match sel.len() {
        0 => 1.0,
        1 => sel[0].iter().sum(),
        m => {
            let mut total = 0.0;
            for i in 0..t.len() {
                let faces: Vec<Vec<f64>> = sel[1..].iter().map(|h| t.facet_support(h, i)).collect();
                let refs: Vec<&[f64]> = faces.iter().map(Vec::as_slice).collect();
                total += sel[0][i] * mv(&t.facet(i).atype, &refs);
            }
            total / m as f64
        }
    }
}

pub fn volume(t: &AType, h: &[f64]) -> Result<f64, GeometryError> {
    mixed_volume(t, &vec![h; t.dim()])
}

/// `V(F_1^i, ..., F_k^i)` in the facet a-type of `i`, for `k = m - 1`
/// arguments.
pub fn facet_mixed_volume(t: &AType, i: usize, sel: &[&[f64]]) -> Result<f64, GeometryError> {
    check_selection(t, sel, t.dim().saturating_sub(1))?;
    Ok(facet_mv(t, i, sel))
}

fn facet_mv(t: &AType, i: usize, sel: &[&[f64]]) -> f64 {
    if sel.is_empty() {
        return 1.0;
    }
    let faces: Vec<Vec<f64>> = sel.iter().map(|h| t.facet_support(h, i)).collect();
    let refs: Vec<&[f64]> = faces.iter().map(Vec::as_slice).collect();
    mv(&t.facet(i).atype, &refs)
}

/// `V(F^{ij}_1, ..., F^{ij}_{m-2})` on the face of codimension two.
fn ridge_mv(t: &AType, i: usize, j: usize, sel: &[&[f64]]) -> f64 {
    if sel.is_empty() {
        return 1.0;
    }
    let f = t.facet(i);
    let local = f.local(j).expect("adjacent facets");
    let faces: Vec<Vec<f64>> = sel.iter().map(|h| t.facet_support(h, i)).collect();
    let refs: Vec<&[f64]> = faces.iter().map(Vec::as_slice).collect();
    facet_mv(&f.atype, local, &refs)
}

/// The mixed volume matrix of `P_1..P_{m-2}`:
/// `M_ij = (m-2)! csc θ_ij V(F^{ij}...)` on `J`,
/// `M_ii = -(m-2)! Σ_j cot θ_ij V(F^{ij}...)`.
pub fn mv_matrix(t: &AType, sel: &[&[f64]]) -> Result<SymmetricMatrix<f64>, GeometryError> {
    let m = t.dim();
    if m < 2 {
        return Err(GeometryError::DimensionTooSmall { dim: m, needed: 2 });
    }
    check_selection(t, sel, m - 2)?;
    let r = t.len();
    let scale = factorial(m - 2);
    let mut out = SymmetricMatrix::zeros(r);
    for (i, j) in t.pairs() {
        let v = 0.5 * (ridge_mv(t, i, j, sel) + ridge_mv(t, j, i, sel));
        let c = t.cos(i, j);
        let s = (1.0 - c * c).sqrt();
        out.set(i, j, scale * v / s);
        let d_i = *out.get(i, i) - scale * c / s * v;
        out.set(i, i, d_i);
        let d_j = *out.get(j, j) - scale * c / s * v;
        out.set(j, j, d_j);
    }
    Ok(out)
}

/// Both mixed-volume identities of the matrix, with relative deviations.
#[derive(Clone, Debug, Serialize)]
pub struct MvIdentityReport {
    pub dim: usize,
    /// `(M h_A)_i` against `(m-1)! V(F_A^i, F_1^i, ...)`.
    pub row_max_deviation: f64,
    pub form: f64,
    pub mixed_volume: f64,
    /// `<h_A, M h_B>` against `m! V(A, B, P_1, ...)`.
    pub form_deviation: f64,
    pub tolerance: f64,
    pub holds: bool,
}

pub const MV_IDENTITY_TOL: f64 = 1e-6;

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

pub fn mv_identities(t: &AType, a: &[f64], b: &[f64], ps: &[&[f64]]) -> Result<MvIdentityReport, GeometryError> {
    let m = t.dim();
    let mat = mv_matrix(t, ps)?;
    check_selection(t, &[a, b], 2)?;
    let ma = mat.mul_vec(a);
    let mut row_max_deviation = 0.0f64;
    for (i, lhs) in ma.iter().enumerate() {
        let args: Vec<&[f64]> = std::iter::once(a).chain(ps.iter().copied()).collect();
        let rhs = factorial(m - 1) * facet_mv(t, i, &args);
        row_max_deviation = row_max_deviation.max(relative(*lhs, rhs));
    }
    let form = dot(a, &mat.mul_vec(b));
    let args: Vec<&[f64]> = [a, b].into_iter().chain(ps.iter().copied()).collect();
    let mixed_volume = mv(t, &args);
    let form_deviation = relative(form, factorial(m) * mixed_volume);
    let holds = row_max_deviation <= MV_IDENTITY_TOL && form_deviation <= MV_IDENTITY_TOL;
    Ok(MvIdentityReport { dim: m, row_max_deviation, form, mixed_volume, form_deviation, tolerance: MV_IDENTITY_TOL, holds })
}

/// `Σ_i Vol_{m-1}(F^i) u_i`, which vanishes for every polytope.
pub fn facet_balance(t: &AType, h: &[f64]) -> Result<Vec<f64>, GeometryError> {
    check_selection(t, &[h], 1)?;
    let m = t.dim();
    let mut sum = vec![0.0; m];
    for i in 0..t.len() {
        let area = facet_mv(t, i, &vec![h; m - 1]);
        sum.iter_mut().zip(&t.normals()[i]).for_each(|(s, u)| *s += area * u);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::family_atype;

    fn axis_normals(m: usize) -> Vec<Vec<f64>> {
        [1.0, -1.0].iter().flat_map(|&s| (0..m).map(move |k| (0..m).map(|j| if j == k { s } else { 0.0 }).collect())).collect()
    }

    /// Box with sides `a` centred at the origin.
    fn boxed(a: &[f64]) -> Vec<f64> {
        a.iter().chain(a).map(|x| x / 2.0).collect()
    }

    #[test]
    fn square_volume_and_matrix() {
        let fam = family_atype(axis_normals(2), vec![("Q".into(), boxed(&[1.0, 1.0]))], 1e-9).unwrap();
        let t = &fam.atype;
        let h = fam.support(0);
        assert!((volume(t, h).unwrap() - 1.0).abs() < 1e-9);
        let m = mv_matrix(t, &[]).unwrap();
        let cycle = [[0.0, 1.0, 0.0, 1.0], [1.0, 0.0, 1.0, 0.0], [0.0, 1.0, 0.0, 1.0], [1.0, 0.0, 1.0, 0.0]];
        for i in 0..4 {
            for j in 0..4 {
                assert!((m.get(i, j) - cycle[i][j]).abs() < 1e-12);
            }
        }
        assert!((m.form(h, h) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rectangle_mixed_area() {
        let fam = family_atype(axis_normals(2), vec![("A".into(), boxed(&[1.0, 2.0])), ("B".into(), boxed(&[3.0, 1.0]))], 1e-9).unwrap();
        let (a, b) = (fam.support(0), fam.support(1));
        let v = mixed_volume(&fam.atype, &[a, b]).unwrap();
        assert!((v - 3.5).abs() < 1e-9);
        let rep = mv_identities(&fam.atype, a, b, &[]).unwrap();
        assert!(rep.holds && (rep.form - 7.0).abs() < 1e-9, "{rep:?}");
    }

    #[test]
    fn boxes_give_the_permanent() {
        let sides = [[1.0, 2.0, 3.0], [0.5, 1.5, 2.0], [2.0, 1.0, 0.25]];
        let fam = family_atype(axis_normals(3), sides.iter().enumerate().map(|(k, s)| (format!("P{k}"), boxed(s))).collect(), 1e-9).unwrap();
        let mut perm = 0.0;
        for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            perm += sides[0][p[0]] * sides[1][p[1]] * sides[2][p[2]];
        }
        let v = mixed_volume(&fam.atype, &[fam.support(0), fam.support(1), fam.support(2)]).unwrap();
        assert!((6.0 * v - perm).abs() < 1e-9);
        assert!((volume(&fam.atype, fam.support(0)).unwrap() - 6.0).abs() < 1e-9);
        let rep = mv_identities(&fam.atype, fam.support(1), fam.support(2), &[fam.support(0)]).unwrap();
        assert!(rep.holds, "{rep:?}");
    }

    #[test]
    fn translated_square_keeps_its_area() {
        let fam = family_atype(axis_normals(2), vec![("Q".into(), vec![2.0, 1.5, -1.0, -0.5])], 1e-9).unwrap();
        assert!((volume(&fam.atype, fam.support(0)).unwrap() - 1.0).abs() < 1e-9);
        let bal = facet_balance(&fam.atype, fam.support(0)).unwrap();
        assert!(bal.iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn selection_is_checked() {
        let fam = family_atype(axis_normals(2), vec![("Q".into(), vec![1.0; 4])], 1e-9).unwrap();
        assert!(matches!(mixed_volume(&fam.atype, &[fam.support(0)]), Err(GeometryError::SelectionLength { expected: 2, found: 1 })));
        assert!(matches!(mv_matrix(&fam.atype, &[fam.support(0)]), Err(GeometryError::SelectionLength { .. })));
    }
}
