use serde::Serialize;

use super::atype::PolytopeFamily;
use super::mixed::{mixed_volume, mv_matrix, mv_identities, MvIdentityReport};
use super::GeometryError;
use crate::atlas::{check_property_with, verify_local_global_with, Atlas, CheckOptions, EdgeTransform, Property, PropertyReport};
use crate::linalg::{check_hyp_pair_with, check_ndc_with_witness, inertia_with, Inertia, SquareMatrix, SymmetricMatrix, Tolerance};

/// The two-level atlas: one source joined to a sink per facet.
#[derive(Clone, Debug)]
pub struct AfAtlas {
    pub atlas: Atlas<f64>,
    pub source: String,
    pub sinks: Vec<String>,
}

pub fn sink_id(i: usize) -> String {
    format!("facet {i}")
}

fn lookup(fam: &PolytopeFamily, ks: &[usize]) -> Result<(), GeometryError> {
    match ks.iter().find(|&&k| k >= fam.len()) {
        Some(&k) => Err(GeometryError::IndexOutOfRange(k)),
        None => Ok(()),
    }
}

/// `M_v = M(P_1..P_{m-2})`, `h_v = h_{P_1}` (after centering `P_1` at the
/// origin), sink `i` carries the facet matrix of `F_2^i..F_{m-2}^i` placed on
/// `J(i)`, and `(T^i v)_j = v_j csc θ_ij - v_i cot θ_ij` on `J(i)`.
pub fn af_atlas(fam: &PolytopeFamily, ps: &[usize]) -> Result<AfAtlas, GeometryError> {
    let t = &fam.atype;
    let m = t.dim();
    if m < 3 {
        return Err(GeometryError::DimensionTooSmall { dim: m, needed: 3 });
    }
    if ps.len() != m - 2 {
        return Err(GeometryError::SelectionLength { expected: m - 2, found: ps.len() });
    }
    lookup(fam, ps)?;
    let centered: Vec<Vec<f64>> = ps.iter().map(|&k| fam.centered_support(k)).collect();
    let sel: Vec<&[f64]> = centered.iter().map(Vec::as_slice).collect();
    let r = t.len();
    let mut atlas = Atlas::new(r);
    let source = "source".to_string();
    atlas.insert_vertex(source.clone(), mv_matrix(t, &sel)?, centered[0].clone()).expect("fresh atlas");
    let mut sinks = Vec::with_capacity(r);
    for i in 0..r {
        let f = t.facet(i);
        let faces: Vec<Vec<f64>> = sel[1..].iter().map(|h| t.facet_support(h, i)).collect();
        let refs: Vec<&[f64]> = faces.iter().map(Vec::as_slice).collect();
        let local = mv_matrix(&f.atype, &refs)?;
        let matrix = SymmetricMatrix::from_fn(r, |a, b| match (f.local(a), f.local(b)) {
            (Some(x), Some(y)) => *local.get(x, y),
            _ => 0.0,
        });
        let mut transform = SquareMatrix::zeros(r);
        for (k, &j) in f.globals.iter().enumerate() {
            transform.set(j, j, f.csc[k]);
            transform.set(j, i, -f.cot[k]);
        }
        let id = sink_id(i);
        atlas.insert_vertex(id.clone(), matrix, vec![0.0; r]).expect("distinct facets");
        atlas.add_edge(&source, i, id.clone(), EdgeTransform::Dense(transform)).expect("one edge per facet");
        sinks.push(id);
    }
    Ok(AfAtlas { atlas, source, sinks })
}

/// Atlas options for mixed-volume matrices, whose diagonals may be negative.
pub fn af_check_options(tol: Tolerance) -> CheckOptions {
    CheckOptions { tol, require_nonneg_diagonal: false, ..CheckOptions::default() }
}

#[derive(Clone, Debug, Serialize)]
pub struct AfAtlasRoute {
    pub sinks: usize,
    pub properties: Vec<PropertyReport>,
    pub local_global: PropertyReport,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AfReport {
    pub dim: usize,
    pub facets: usize,
    pub v_ab: f64,
    pub v_aa: f64,
    pub v_bb: f64,
    /// `V(A,B,..)^2 - V(A,A,..) V(B,B,..)`.
    pub slack: f64,
    pub direct_holds: bool,
    pub inertia: Inertia,
    pub ope: bool,
    pub pair_holds: bool,
    pub identities: MvIdentityReport,
    /// NDC with `g = h_A` in the planar case.
    pub base_ndc: Option<bool>,
    pub atlas: Option<AfAtlasRoute>,
    pub matrix_holds: bool,
    pub agree: bool,
    pub holds: bool,
}

pub fn verify_af(fam: &PolytopeFamily, a: usize, b: usize, ps: &[usize]) -> Result<AfReport, GeometryError> {
    verify_af_with(fam, a, b, ps, Tolerance::default())
}

/// Checks the inequality directly from three mixed volumes and through the
/// mixed volume matrix: OPE, the pair inequality at `(h_A, h_B)`, the
/// identities linking the matrix to mixed volumes, and either the planar NDC
/// base case or the local–global principle on the atlas.
pub fn verify_af_with(fam: &PolytopeFamily, a: usize, b: usize, ps: &[usize], tol: Tolerance) -> Result<AfReport, GeometryError> {
    let t = &fam.atype;
    let m = t.dim();
    if m < 2 {
        return Err(GeometryError::DimensionTooSmall { dim: m, needed: 2 });
    }
    if ps.len() != m - 2 {
        return Err(GeometryError::SelectionLength { expected: m - 2, found: ps.len() });
    }
    lookup(fam, &[a, b])?;
    lookup(fam, ps)?;
    let (ha, hb) = (fam.support(a), fam.support(b));
    let rest: Vec<&[f64]> = ps.iter().map(|&k| fam.support(k)).collect();
    let with = |x: &[f64], y: &[f64]| -> Result<f64, GeometryError> {
        let sel: Vec<&[f64]> = [x, y].into_iter().chain(rest.iter().copied()).collect();
        mixed_volume(t, &sel)
    };
    let (v_ab, v_aa, v_bb) = (with(ha, hb)?, with(ha, ha)?, with(hb, hb)?);
    let lhs = v_ab * v_ab;
    let rhs = v_aa * v_bb;
    let slack = lhs - rhs;
    let direct_holds = slack >= -tol.eps * lhs.abs().max(rhs.abs()).max(1.0);

    let mat = mv_matrix(t, &rest)?;
    let inertia = inertia_with(&mat, &tol);
    let ope = inertia.n_pos <= 1;
    let pair_holds = check_hyp_pair_with(&mat, ha, hb, &tol).expect("support vectors match the matrix order");
    let identities = mv_identities(t, ha, hb, &rest)?;
    let (base_ndc, atlas) = if m == 2 {
        (Some(check_ndc_with_witness(&mat, ha, &tol).unwrap_or(false)), None)
    } else {
        (None, Some(atlas_route(fam, ps, tol)?))
    };
    let matrix_holds = ope && pair_holds && identities.holds && base_ndc.unwrap_or(true) && atlas.as_ref().map_or(true, |r| r.holds);
    let agree = direct_holds == (ope && pair_holds);
    Ok(AfReport {
        dim: m,
        facets: t.len(),
        v_ab,
        v_aa,
        v_bb,
        slack,
        direct_holds,
        inertia,
        ope,
        pair_holds,
        identities,
        base_ndc,
        atlas,
        matrix_holds,
        agree,
        holds: direct_holds && matrix_holds && agree,
    })
}

fn atlas_route(fam: &PolytopeFamily, ps: &[usize], tol: Tolerance) -> Result<AfAtlasRoute, GeometryError> {
    let af = af_atlas(fam, ps)?;
    let opts = af_check_options(tol);
    let a = &af.atlas;
    let mut properties = vec![crate::atlas::validate_atlas_with(a, &opts)];
    for p in [Property::Inh, Property::PullEq, Property::Irr, Property::HPos] {
        properties.push(check_property_with(a, &af.source, p, &opts).expect("source exists"));
    }
    let local_global = verify_local_global_with(a, &af.source, &opts).expect("source is not a sink").summary();
    let holds = local_global.holds && properties.iter().all(|p| p.holds);
    Ok(AfAtlasRoute { sinks: af.sinks.len(), properties, local_global, holds })
}
