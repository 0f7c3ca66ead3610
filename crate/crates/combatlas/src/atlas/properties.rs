use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use super::{Atlas, AtlasError, AtlasVertex, CheckOptions, Edge, Property, PropertyReport, Witness};
use crate::linalg::{inertia_scaled, irreducible_on_support, support, IndexSet, Scalar, SymmetricMatrix};

/// Acyclicity, edge targets, nonnegative diagonals and `h` vectors.
pub fn validate_atlas<T: Scalar>(a: &Atlas<T>) -> PropertyReport {
    validate_atlas_with(a, &CheckOptions::default())
}

pub fn validate_atlas_with<T: Scalar>(a: &Atlas<T>, opts: &CheckOptions) -> PropertyReport {
    let fail = |vertex: &str, indices: Vec<usize>, lhs: String, note: String| {
        PropertyReport::fail(Property::Valid, Some(vertex), Witness { indices, lhs, rhs: "0".into(), note })
    };
    for v in a.vertices() {
        for (&label, edge) in &v.edges {
            if a.vertices.get(&edge.target).is_none() {
                return fail(&v.id, vec![label], String::new(), format!("edge {label} targets missing vertex {:?}", edge.target));
            }
        }
        let scale = v.matrix.max_abs();
        for i in 0..a.dimension() {
            let d = v.matrix.get(i, i);
            if opts.require_nonneg_diagonal && d.sign_with(opts.tol.threshold(scale)) == Ordering::Less {
                return fail(&v.id, vec![i], d.render(), "negative diagonal entry".into());
            }
            let hi = &v.h[i];
            if hi.sign_with(0.0) == Ordering::Less {
                return fail(&v.id, vec![i], hi.render(), "negative h entry".into());
            }
        }
    }
    if let Some(cycle) = find_cycle(a) {
        let first = cycle[0].clone();
        return PropertyReport::fail(
            Property::Valid,
            Some(&first),
            Witness { indices: vec![], lhs: String::new(), rhs: String::new(), note: format!("cycle through {}", cycle.join(" -> ")) },
        );
    }
    PropertyReport::pass(Property::Valid, None)
}

fn find_cycle<T: Scalar>(a: &Atlas<T>) -> Option<Vec<String>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Fresh,
        Open,
        Done,
    }
    let mut mark: BTreeMap<&str, Mark> = a.ids().map(|id| (id, Mark::Fresh)).collect();
    for root in a.ids() {
        if mark[root] != Mark::Fresh {
            continue;
        }
        let mut stack: Vec<(&str, Vec<&str>)> = vec![(root, children(a, root))];
        mark.insert(root, Mark::Open);
        while let Some((node, pending)) = stack.last_mut() {
            let node = *node;
            match pending.pop() {
                Some(child) => match mark.get(child).copied() {
                    Some(Mark::Fresh) => {
                        mark.insert(child, Mark::Open);
                        stack.push((child, children(a, child)));
                    }
                    Some(Mark::Open) => {
                        let start = stack.iter().position(|(n, _)| *n == child).unwrap_or(0);
                        let mut cycle: Vec<String> = stack[start..].iter().map(|(n, _)| n.to_string()).collect();
                        cycle.push(child.to_string());
                        return Some(cycle);
                    }
                    _ => {}
                },
                None => {
                    mark.insert(node, Mark::Done);
                    stack.pop();
                }
            }
        }
    }
    None
}

fn children<'a, T>(a: &'a Atlas<T>, id: &str) -> Vec<&'a str> {
    a.vertices.get(id).map(|v| v.edges.values().map(|e| e.target.as_str()).collect()).unwrap_or_default()
}

pub fn check_property<T: Scalar>(a: &Atlas<T>, v: &str, prop: Property) -> Result<PropertyReport, AtlasError> {
    check_property_with(a, v, prop, &CheckOptions::default())
}

pub fn check_property_with<T: Scalar>(a: &Atlas<T>, v: &str, prop: Property, opts: &CheckOptions) -> Result<PropertyReport, AtlasError> {
    let vertex = a.vertex(v)?;
    if prop.needs_edges() && vertex.is_sink() {
        return Err(AtlasError::Sink(v.to_string()));
    }
    let ctx = Ctx { atlas: a, vertex, supp: support(&vertex.matrix), opts };
    Ok(match prop {
        Property::Inh => ctx.inh()?,
        Property::PullEq => ctx.pull(true)?,
        Property::Pull => ctx.pull(false)?,
        Property::Irr => ctx.irr(),
        Property::HPos => ctx.h_pos(),
        Property::Iden => ctx.iden(),
        Property::TInv => ctx.t_inv()?,
        Property::DecSupp => ctx.dec_supp()?,
        Property::Ope => ctx.ope(),
        Property::Valid => validate_atlas_with(a, opts),
        Property::PullSufficient => check_pull_sufficient_with(a, v, opts)?.summary(),
        Property::LocalGlobal => super::verify_local_global_with(a, v, opts)?.summary(),
    })
}

struct Ctx<'a, T> {
    atlas: &'a Atlas<T>,
    vertex: &'a AtlasVertex<T>,
    supp: IndexSet,
    opts: &'a CheckOptions,
}

impl<'a, T: Scalar> Ctx<'a, T> {
    fn id(&self) -> Option<&str> {
        Some(&self.vertex.id)
    }

    fn fail(&self, prop: Property, indices: Vec<usize>, lhs: &T, rhs: &T, note: impl Into<String>) -> PropertyReport {
        PropertyReport::fail(prop, self.id(), Witness { indices, lhs: lhs.render(), rhs: rhs.render(), note: note.into() })
    }

    fn missing_edge(&self, prop: Property, i: usize) -> PropertyReport {
        PropertyReport::fail(
            prop,
            self.id(),
            Witness { indices: vec![i], lhs: String::new(), rhs: String::new(), note: format!("no out-edge labeled {i} although {i} is in the support") },
        )
    }

    /// Edge and child matrix for label `i`.
    fn child(&self, i: usize) -> Result<Option<(&'a Edge<T>, &'a AtlasVertex<T>)>, AtlasError> {
        match self.vertex.edges.get(&i) {
            None => Ok(None),
            Some(e) => Ok(Some((e, self.atlas.vertex(&e.target)?))),
        }
    }

    fn inh(&self) -> Result<PropertyReport, AtlasError> {
        let r = self.atlas.dimension();
        for i in self.supp.iter() {
            let Some((edge, child)) = self.child(i)? else { return Ok(self.missing_edge(Property::Inh, i)) };
            let th = edge.transform.apply(&self.vertex.h);
            let u = child.matrix.mul_vec(&th);
            let rhs = edge.transform.apply_transpose(&u);
            for (b, rhs_b) in rhs.iter().enumerate().take(r) {
                let lhs = self.vertex.matrix.get(i, b);
                if !lhs.near(rhs_b, &self.opts.tol) {
                    return Ok(self.fail(Property::Inh, vec![i, b], lhs, rhs_b, format!("(M e_{b})_{i} differs from <T e_{b}, M' T h> along edge {i}")));
                }
            }
        }
        Ok(PropertyReport::pass(Property::Inh, self.id()))
    }

    fn pulled_sum(&self) -> Result<Result<SymmetricMatrix<T>, usize>, AtlasError> {
        let mut sum = SymmetricMatrix::zeros(self.atlas.dimension());
        for i in self.supp.iter() {
            let Some((edge, child)) = self.child(i)? else { return Ok(Err(i)) };
            let pulled = edge.transform.pull_back(&child.matrix);
            sum = sum.add(&pulled.scale(&self.vertex.h[i]));
        }
        Ok(Ok(sum))
    }

    fn pull(&self, equality: bool) -> Result<PropertyReport, AtlasError> {
        let prop = if equality { Property::PullEq } else { Property::Pull };
        let sum = match self.pulled_sum()? {
            Ok(s) => s,
            Err(i) => return Ok(self.missing_edge(prop, i)),
        };
        let m = &self.vertex.matrix;
        if equality {
            let r = m.order();
            for i in 0..r {
                for j in i..r {
                    if !sum.get(i, j).near(m.get(i, j), &self.opts.tol) {
                        return Ok(self.fail(prop, vec![i, j], sum.get(i, j), m.get(i, j), "pulled-back form differs from M"));
                    }
                }
            }
            return Ok(PropertyReport::pass(prop, self.id()));
        }
        let diff = sum.sub(m);
        let scale = m.max_abs().max(sum.max_abs());
        let inertia = inertia_scaled(&diff, &self.opts.tol, scale);
        if inertia.n_neg == 0 {
            Ok(PropertyReport::pass(prop, self.id()))
        } else {
            Ok(PropertyReport::fail(
                prop,
                self.id(),
                Witness {
                    indices: vec![],
                    lhs: format!("{}", inertia.n_neg),
                    rhs: "0".into(),
                    note: format!("pulled-back form minus M has inertia (+{}, -{}, 0x{})", inertia.n_pos, inertia.n_neg, inertia.n_zero),
                },
            ))
        }
    }

    fn irr(&self) -> PropertyReport {
        if irreducible_on_support(&self.vertex.matrix) {
            PropertyReport::pass(Property::Irr, self.id())
        } else {
            PropertyReport::fail(
                Property::Irr,
                self.id(),
                Witness { indices: self.supp.as_slice().to_vec(), lhs: String::new(), rhs: String::new(), note: "support graph is disconnected".into() },
            )
        }
    }

    fn h_pos(&self) -> PropertyReport {
        let m = &self.vertex.matrix;
        let h = &self.vertex.h;
        let mh = m.mul_vec(h);
        let h_scale = h.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
        let threshold = self.opts.tol.threshold(m.max_abs() * h_scale);
        for i in self.supp.iter() {
            if h[i].sign() != Ordering::Greater {
                return self.fail(Property::HPos, vec![i], &h[i], &T::zero(), format!("h_{i} is not positive on the support"));
            }
            if mh[i].sign_with(threshold) != Ordering::Greater {
                return self.fail(Property::HPos, vec![i], &mh[i], &T::zero(), format!("(Mh)_{i} is not positive on the support"));
            }
        }
        PropertyReport::pass(Property::HPos, self.id())
    }

    fn iden(&self) -> PropertyReport {
        for i in self.supp.iter() {
            match self.vertex.edges.get(&i) {
                None => return self.missing_edge(Property::Iden, i),
                Some(e) if !e.transform.is_identity() => {
                    return PropertyReport::fail(
                        Property::Iden,
                        self.id(),
                        Witness { indices: vec![i], lhs: String::new(), rhs: String::new(), note: format!("transform on edge {i} is not the identity") },
                    )
                }
                Some(_) => {}
            }
        }
        PropertyReport::pass(Property::Iden, self.id())
    }

    fn t_inv(&self) -> Result<PropertyReport, AtlasError> {
        let mut children: BTreeMap<usize, &SymmetricMatrix<T>> = BTreeMap::new();
        for i in self.supp.iter() {
            match self.child(i)? {
                Some((_, c)) => {
                    children.insert(i, &c.matrix);
                }
                None => return Ok(self.missing_edge(Property::TInv, i)),
            }
        }
        let s = self.supp.as_slice();
        for &i in s {
            for &j in s {
                for &k in s {
                    if self.opts.tinv_distinct_only && (i == j || j == k || i == k) {
                        continue;
                    }
                    let a = children[&i].get(j, k);
                    let b = children[&j].get(k, i);
                    let c = children[&k].get(i, j);
                    if !a.near(b, &self.opts.tol) {
                        return Ok(self.fail(Property::TInv, vec![i, j, k], a, b, "M<i>_jk differs from M<j>_ki"));
                    }
                    if !a.near(c, &self.opts.tol) {
                        return Ok(self.fail(Property::TInv, vec![i, j, k], a, c, "M<i>_jk differs from M<k>_ij"));
                    }
                }
            }
        }
        Ok(PropertyReport::pass(Property::TInv, self.id()))
    }

    fn dec_supp(&self) -> Result<PropertyReport, AtlasError> {
        for i in self.supp.iter() {
            let Some((_, child)) = self.child(i)? else { return Ok(self.missing_edge(Property::DecSupp, i)) };
            let child_supp = support(&child.matrix);
            let outside = child_supp.iter().find(|&j| !self.supp.contains(j));
            if let Some(j) = outside {
                return Ok(PropertyReport::fail(
                    Property::DecSupp,
                    self.id(),
                    Witness { indices: vec![i, j], lhs: String::new(), rhs: String::new(), note: format!("index {j} is in supp(M<{i}>) but not in supp(M)") },
                ));
            }
        }
        Ok(PropertyReport::pass(Property::DecSupp, self.id()))
    }

    fn ope(&self) -> PropertyReport {
        ope_report(&self.vertex.id, &self.vertex.matrix, self.opts)
    }
}

pub(super) fn ope_report<T: Scalar>(id: &str, m: &SymmetricMatrix<T>, opts: &CheckOptions) -> PropertyReport {
    let inertia = crate::linalg::inertia_with(m, &opts.tol);
    if inertia.n_pos <= 1 {
        PropertyReport::pass(Property::Ope, Some(id))
    } else {
        PropertyReport::fail(
            Property::Ope,
            Some(id),
            Witness { indices: vec![], lhs: inertia.n_pos.to_string(), rhs: "1".into(), note: "more than one positive eigenvalue".into() },
        )
    }
}

/// The implication of the pullback theorem evaluated at one vertex.
#[derive(Clone, Debug, Serialize)]
pub struct ImplicationReport {
    pub vertex: String,
    pub premises: Vec<PropertyReport>,
    pub conclusion: PropertyReport,
    /// All premises hold.
    pub triggered: bool,
    /// The implication holds (vacuously when not triggered).
    pub holds: bool,
}

impl ImplicationReport {
    pub fn summary(&self) -> PropertyReport {
        if self.holds {
            PropertyReport::pass(Property::PullSufficient, Some(&self.vertex))
        } else {
            PropertyReport::fail(
                Property::PullSufficient,
                Some(&self.vertex),
                Witness { indices: vec![], lhs: String::new(), rhs: String::new(), note: "premises hold but PullEq fails".into() },
            )
        }
    }
}

/// Inh, Iden, TInv and DecSupp together imply PullEq.
pub fn check_pull_sufficient<T: Scalar>(a: &Atlas<T>, v: &str) -> Result<ImplicationReport, AtlasError> {
    check_pull_sufficient_with(a, v, &CheckOptions::default())
}

pub fn check_pull_sufficient_with<T: Scalar>(a: &Atlas<T>, v: &str, opts: &CheckOptions) -> Result<ImplicationReport, AtlasError> {
    let premises = [Property::Inh, Property::Iden, Property::TInv, Property::DecSupp]
        .into_iter()
        .map(|p| check_property_with(a, v, p, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let conclusion = check_property_with(a, v, Property::PullEq, opts)?;
    let triggered = premises.iter().all(|p| p.holds);
    let holds = !triggered || conclusion.holds;
    Ok(ImplicationReport { vertex: v.to_string(), premises, conclusion, triggered, holds })
}
