use std::cmp::Ordering;

use serde::Serialize;

use super::properties::{check_property_with, ope_report};
use super::{Atlas, AtlasError, CheckOptions, Property, PropertyReport, Witness};
use crate::linalg::{inertia_scaled, support, Inertia, Scalar, SymmetricMatrix};

/// The construction from the local–global proof, restricted to `supp(M)`:
/// `D_ii = (Mh)_i / h_i` and `N = D⁻¹M`.
///
/// The eigenvalues of `N` are those of the generalized problem `Mx = λDx`,
/// so by Sylvester's law `1` is the only positive eigenvalue, and simple,
/// exactly when `M` has one positive eigenvalue, `M - D` has none, and `M - D`
/// is singular of nullity one.
#[derive(Clone, Debug, Serialize)]
pub struct PerronDiagnostics {
    pub d: Vec<String>,
    pub nh_equals_h: bool,
    pub inertia_m: Inertia,
    pub inertia_m_minus_d: Inertia,
    pub one_is_unique_positive_eigenvalue: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalGlobalReport {
    pub vertex: String,
    pub premises: Vec<PropertyReport>,
    pub premises_hold: bool,
    /// OPE at the vertex; `None` when a premise failed and nothing is asserted.
    pub conclusion: Option<bool>,
    pub diagnostics: Option<PerronDiagnostics>,
    pub holds: bool,
}

impl LocalGlobalReport {
    pub fn summary(&self) -> PropertyReport {
        if self.holds {
            return PropertyReport::pass(Property::LocalGlobal, Some(&self.vertex));
        }
        let note = match (self.premises.iter().find(|p| !p.holds), self.conclusion) {
            (Some(p), _) => format!("premise {} fails{}", p.property, p.vertex.as_deref().map(|v| format!(" at {v}")).unwrap_or_default()),
            (None, Some(false)) => "premises hold but the vertex has more than one positive eigenvalue".into(),
            _ => "eigenvalue diagnostics of N = D^-1 M are inconsistent".into(),
        };
        PropertyReport::fail(Property::LocalGlobal, Some(&self.vertex), Witness { indices: vec![], lhs: String::new(), rhs: String::new(), note })
    }
}

pub fn verify_local_global<T: Scalar>(a: &Atlas<T>, v: &str) -> Result<LocalGlobalReport, AtlasError> {
    verify_local_global_with(a, v, &CheckOptions::default())
}

/// Checks the premises of the local–global principle at `v` (Inh, Pull,
/// Irr, hPos, OPE at every out-neighbor), then the conclusion and the proof's
/// eigenvalue diagnostics.
pub fn verify_local_global_with<T: Scalar>(a: &Atlas<T>, v: &str, opts: &CheckOptions) -> Result<LocalGlobalReport, AtlasError> {
    let vertex = a.vertex(v)?;
    if vertex.is_sink() {
        return Err(AtlasError::Sink(v.to_string()));
    }
    let mut premises = Vec::new();
    for p in [Property::Inh, Property::Pull, Property::Irr, Property::HPos] {
        premises.push(check_property_with(a, v, p, opts)?);
    }
    for edge in vertex.edges.values() {
        let child = a.vertex(&edge.target)?;
        premises.push(ope_report(&child.id, &child.matrix, opts));
    }
    let premises_hold = premises.iter().all(|p| p.holds);
    if !premises_hold {
        return Ok(LocalGlobalReport { vertex: v.to_string(), premises, premises_hold, conclusion: None, diagnostics: None, holds: false });
    }
    let conclusion = ope_report(v, &vertex.matrix, opts).holds;
    if support(&vertex.matrix).is_empty() {
        return Ok(LocalGlobalReport { vertex: v.to_string(), premises, premises_hold, conclusion: Some(conclusion), diagnostics: None, holds: conclusion });
    }
    let diagnostics = perron_diagnostics(&vertex.matrix, &vertex.h, opts);
    let holds = conclusion && diagnostics.nh_equals_h && diagnostics.one_is_unique_positive_eigenvalue;
    Ok(LocalGlobalReport { vertex: v.to_string(), premises, premises_hold, conclusion: Some(conclusion), diagnostics: Some(diagnostics), holds })
}

/// Requires `h > 0` and `Mh > 0` on the support (guaranteed by hPos).
fn perron_diagnostics<T: Scalar>(m: &SymmetricMatrix<T>, h: &[T], opts: &CheckOptions) -> PerronDiagnostics {
    let supp = support(m);
    let idx = supp.as_slice();
    let ms = m.restrict(idx);
    let hs: Vec<T> = idx.iter().map(|&i| h[i].clone()).collect();
    let mh = ms.mul_vec(&hs);
    let d: Vec<T> = mh.iter().zip(&hs).map(|(a, b)| a.clone() / b.clone()).collect();
    let nh: Vec<T> = mh.iter().zip(&d).map(|(a, b)| a.clone() / b.clone()).collect();
    let nh_equals_h = nh.iter().zip(&hs).all(|(a, b)| a.near(b, &opts.tol));
    let scale = ms.max_abs().max(d.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max));
    let inertia_m = inertia_scaled(&ms, &opts.tol, scale);
    let m_minus_d = ms.sub(&SymmetricMatrix::diagonal(&d));
    let inertia_m_minus_d = inertia_scaled(&m_minus_d, &opts.tol, scale);
    let one_is_unique_positive_eigenvalue =
        inertia_m.n_pos == 1 && inertia_m_minus_d.n_pos == 0 && inertia_m_minus_d.n_zero == 1 && d.iter().all(|x| x.sign() == Ordering::Greater);
    PerronDiagnostics { d: d.iter().map(|x| x.render()).collect(), nh_equals_h, inertia_m, inertia_m_minus_d, one_is_unique_positive_eigenvalue }
}
