use super::*;
use crate::linalg::{int, Rational};

fn q(rows: &[&[i64]]) -> SymmetricMatrix<Rational> {
    SymmetricMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
}

fn ones(n: usize) -> Vec<Rational> {
    vec![int(1); n]
}

/// Root `[[0,1],[1,0]]` with `h = (1,1)` and children `e1e1ᵀ`-style
/// projections chosen so that row `i` of the root equals `M<i> h`.
fn two_level(child0: SymmetricMatrix<Rational>) -> Atlas<Rational> {
    let mut a = Atlas::new(2);
    a.insert_vertex("root", q(&[&[0, 1], &[1, 0]]), ones(2)).unwrap();
    a.insert_vertex("c0", child0, ones(2)).unwrap();
    a.insert_vertex("c1", q(&[&[1, 0], &[0, 0]]), ones(2)).unwrap();
    a.add_edge("root", 0, "c0", EdgeTransform::Identity).unwrap();
    a.add_edge("root", 1, "c1", EdgeTransform::Identity).unwrap();
    a
}

#[test]
fn single_sink_is_valid() {
    let mut a = Atlas::new(1);
    a.insert_vertex("v", q(&[&[1]]), ones(1)).unwrap();
    assert!(validate_atlas(&a).holds);
    assert_eq!(a.sources(), vec!["v"]);
}

#[test]
fn two_cycle_is_rejected() {
    let mut a = Atlas::new(1);
    a.insert_vertex("a", q(&[&[0]]), ones(1)).unwrap();
    a.insert_vertex("b", q(&[&[0]]), ones(1)).unwrap();
    a.add_edge("a", 0, "b", EdgeTransform::Identity).unwrap();
    a.add_edge("b", 0, "a", EdgeTransform::Identity).unwrap();
    let r = validate_atlas(&a);
    assert!(!r.holds);
    assert!(r.witness.unwrap().note.starts_with("cycle"));
}

#[test]
fn negative_h_is_rejected() {
    let mut a = Atlas::new(2);
    a.insert_vertex("v", q(&[&[1, 0], &[0, 1]]), vec![int(1), int(-1)]).unwrap();
    let r = validate_atlas(&a);
    assert!(!r.holds);
    assert_eq!(r.witness.unwrap().indices, vec![1]);
}

#[test]
fn negative_diagonal_is_optional() {
    let mut a = Atlas::new(1);
    a.insert_vertex("v", q(&[&[-1]]), ones(1)).unwrap();
    assert!(!validate_atlas(&a).holds);
    let opts = CheckOptions { require_nonneg_diagonal: false, ..CheckOptions::default() };
    assert!(validate_atlas_with(&a, &opts).holds);
}

#[test]
fn construction_errors() {
    let mut a = two_level(q(&[&[0, 0], &[0, 1]]));
    assert!(matches!(a.add_edge("root", 0, "c1", EdgeTransform::Identity), Err(AtlasError::DuplicateLabel { label: 0, .. })));
    assert!(matches!(a.add_edge("root", 2, "c1", EdgeTransform::Identity), Err(AtlasError::LabelOutOfRange { .. })));
    assert!(matches!(a.insert_vertex("x", q(&[&[1]]), ones(1)), Err(AtlasError::DimensionMismatch { .. })));
    assert!(matches!(check_property(&a, "c0", Property::Inh), Err(AtlasError::Sink(_))));
    assert!(matches!(check_property(&a, "nope", Property::Irr), Err(AtlasError::UnknownVertex(_))));
}

#[test]
fn hand_built_atlas_properties() {
    let a = two_level(q(&[&[0, 0], &[0, 1]]));
    let holds = |p| check_property(&a, "root", p).unwrap().holds;
    assert!(holds(Property::Inh));
    assert!(holds(Property::Pull));
    assert!(!holds(Property::PullEq));
    assert!(holds(Property::Irr));
    assert!(holds(Property::HPos));
    assert!(holds(Property::Iden));
    assert!(!holds(Property::TInv));
    assert!(holds(Property::DecSupp));
    let imp = check_pull_sufficient(&a, "root").unwrap();
    assert!(!imp.triggered && imp.holds);
    let lg = verify_local_global(&a, "root").unwrap();
    assert!(lg.premises_hold && lg.holds, "{lg:?}");
    let diag = lg.diagnostics.unwrap();
    assert_eq!(diag.d, vec!["1", "1"]);
    assert_eq!(diag.inertia_m_minus_d.n_zero, 1);
}

#[test]
fn doubled_child_breaks_inheritance() {
    let a = two_level(q(&[&[0, 0], &[0, 2]]));
    let r = check_property(&a, "root", Property::Inh).unwrap();
    assert!(!r.holds);
    let w = r.witness.unwrap();
    assert_eq!(w.indices, vec![0, 1]);
    assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("1", "2"));
}

#[test]
fn hyperbolic_failure_in_child_blocks_conclusion() {
    let a = two_level(q(&[&[1, 0], &[0, 1]]));
    let lg = verify_local_global(&a, "root").unwrap();
    assert!(!lg.premises_hold);
    assert_eq!(lg.conclusion, None);
    assert!(!lg.holds);
    assert!(lg.premises.iter().any(|p| p.property == Property::Ope && !p.holds && p.vertex.as_deref() == Some("c0")));
}

#[test]
fn dense_transform_round_trips_through_json() {
    let mut a = two_level(q(&[&[0, 0], &[0, 1]]));
    let mut t = SquareMatrix::zeros(2);
    t.set(0, 1, int(1));
    t.set(1, 0, int(1));
    a.vertex_mut("root").unwrap().edges.get_mut(&1).unwrap().transform = EdgeTransform::Dense(t);
    let text = atlas_to_json(&a).to_string();
    let back: Atlas<Rational> = atlas_from_str(&text).unwrap();
    assert_eq!(back, a);
    assert!(text.contains("\"transform\":\"identity\""));
}

#[test]
fn json_errors_name_the_path() {
    let text = r#"{"dimension":1,"vertices":[{"id":"a","matrix":{"order":1,"rows":[["1"]]},"h":["1"],"edges":[{"label":3,"target":"a"}]}]}"#;
    let err = atlas_from_str::<Rational>(text).unwrap_err().to_string();
    assert!(err.starts_with("$.vertices[0].edges[0]"), "{err}");
}
