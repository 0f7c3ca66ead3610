use num_traits::{One, Zero};
use serde::Serialize;

use super::atlas::{CanonicalWord, MatroidAtlas};
use super::complex::{mask_of, SimplicialComplex};
use crate::atlas::{check_property, verify_local_global, Property, PropertyReport, Witness};
use crate::linalg::{support, IndexSet};

/// Outcome of running every atlas check over a matroid atlas.
#[derive(Clone, Debug, Serialize)]
pub struct AtlasSuiteReport {
    pub vertices: usize,
    pub non_sinks: usize,
    pub regular: usize,
    pub local_global_checked: usize,
    pub checks: usize,
    pub failures: Vec<PropertyReport>,
    pub holds: bool,
}

/// Inh, TInv, DecSupp and Iden at every non-sink; Irr and hPos at every
/// interior `t`; the support formula `Cnt(α) ∪ {*}`; OPE everywhere; and the
/// local–global principle at every regular non-sink.
pub fn verify_matroid_atlas(c: &SimplicialComplex, ma: &MatroidAtlas) -> AtlasSuiteReport {
    let a = &ma.atlas;
    let n = c.ground_size();
    let mut failures = Vec::new();
    let (mut checks, mut regular, mut lg) = (0, 0, 0);
    let mut record = |r: PropertyReport, failures: &mut Vec<PropertyReport>| {
        checks += 1;
        if !r.holds {
            failures.push(r);
        }
    };
    for v in a.vertices() {
        let key = &ma.keys[&v.id];
        record(check_property(a, &v.id, Property::Ope).expect("vertex exists"), &mut failures);
        if let CanonicalWord::Feasible(alpha) = &key.alpha {
            let base = mask_of(alpha);
            let expected: IndexSet = (0..n).filter(|&x| base >> x & 1 == 0 && c.contains(base | 1 << x)).chain([n]).collect();
            let found = support(&v.matrix);
            let ok = expected == found;
            let report = if ok {
                PropertyReport::pass(Property::Irr, Some(&v.id))
            } else {
                let note = format!("support {:?}, expected Cnt(α) ∪ {{*}} = {:?}", found.as_slice(), expected.as_slice());
                PropertyReport::fail(Property::Irr, Some(&v.id), Witness { indices: vec![], lhs: String::new(), rhs: String::new(), note })
            };
            record(report, &mut failures);
        }
        if v.is_sink() {
            continue;
        }
        for p in [Property::Inh, Property::TInv, Property::DecSupp, Property::Iden] {
            record(check_property(a, &v.id, p).expect("non-sink"), &mut failures);
        }
        let interior = !key.t.is_zero() && !key.t.is_one();
        let irr = check_property(a, &v.id, Property::Irr).expect("vertex exists");
        let hpos = check_property(a, &v.id, Property::HPos).expect("vertex exists");
        let is_regular = irr.holds && hpos.holds;
        if interior {
            record(irr, &mut failures);
            record(hpos, &mut failures);
        }
        if is_regular {
            regular += 1;
            lg += 1;
            record(verify_local_global(a, &v.id).expect("non-sink").summary(), &mut failures);
        }
    }
    let holds = failures.is_empty();
    AtlasSuiteReport { vertices: a.len(), non_sinks: a.non_sinks().count(), regular, local_global_checked: lg, checks, failures, holds }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{catalog, default_t_samples, matroid_atlas, Matroid, WeightProfile};

    #[test]
    fn small_atlases_pass() {
        let u = Matroid::uniform(5, 3).unwrap();
        for k in 1..3 {
            for w in [WeightProfile::unweighted(), WeightProfile::strong(5, k).unwrap()] {
                let ma = matroid_atlas(&u, k, &w, &default_t_samples()).unwrap();
                let rep = verify_matroid_atlas(u.complex(), &ma);
                assert!(rep.holds, "k={k}: {:?}", rep.failures);
            }
        }
        let k4 = catalog::k4();
        let ma = matroid_atlas(&k4, 2, &WeightProfile::unweighted(), &default_t_samples()).unwrap();
        let rep = verify_matroid_atlas(k4.complex(), &ma);
        assert!(rep.holds, "{:?}", rep.failures);
        assert!(rep.local_global_checked >= 3);
    }
}
