//! Class-basis reduction examples, round trips and ideal membership.

use std::sync::Arc;

use proptest::prelude::*;
use series_core::*;
use symfunc::*;

fn two_roots(kind: GroupKind) -> (Arc<Ring>, ClassBasis) {
    let r = Ring::new(vec![Var::root("x1", "T"), Var::root("x2", "T")], 4, 0).unwrap();
    let b = ClassBasis::new(&r, vec![GroupSpec::new("T", kind, ["x1", "x2"])]).unwrap();
    (r, b)
}

fn v(r: &Arc<Ring>, name: &str) -> GradedPoly {
    GradedPoly::var(r, r.var_index(name).unwrap())
}

#[test]
fn newton_identity_complex() {
    let (r, b) = two_roots(GroupKind::Complex);
    let f = &(&v(&r, "x1") * &v(&r, "x1")) + &(&v(&r, "x2") * &v(&r, "x2"));
    let t = b.target();
    let e1 = v(t, "e1(T)");
    let expected = &(&e1 * &e1) - &v(t, "e2(T)").scale(&int(2));
    assert_eq!(b.to_class_basis(&f).unwrap(), expected);
}

#[test]
fn sum_of_squares_is_p1() {
    let (r, b) = two_roots(GroupKind::Real);
    let f = &(&v(&r, "x1") * &v(&r, "x1")) + &(&v(&r, "x2") * &v(&r, "x2"));
    assert_eq!(b.to_class_basis(&f).unwrap(), v(b.target(), "p1(T)"));
}

#[test]
fn asymmetric_input_is_rejected() {
    let (r, b) = two_roots(GroupKind::Complex);
    let f = &v(&r, "x1") - &v(&r, "x2");
    let err = b.to_class_basis(&f).unwrap_err();
    assert!(matches!(err, SymError::Domain(ref m) if m.contains("x1 <-> x2")), "{err}");
}

fn full() -> (Arc<Ring>, ClassBasis) {
    let vars = vec![
        Var::root("x1", "T"),
        Var::root("x2", "T"),
        Var::root("w1", "W"),
        Var::root("w2", "W"),
        Var::root("u", "L"),
        Var::zeta(),
    ];
    let r = Ring::new(vars, 4, 2).unwrap();
    let b = ClassBasis::new(
        &r,
        vec![
            GroupSpec::new("T", GroupKind::Real, ["x1", "x2"]),
            GroupSpec::new("W", GroupKind::Complex, ["w1", "w2"]),
            GroupSpec::new("L", GroupKind::Line, ["u"]),
        ],
    )
    .unwrap();
    (r, b)
}

#[test]
fn constraint_examples() {
    let (_, b) = full();
    let t = b.target().clone();
    let cs = ConstraintSet::parse(&b, &["p1(T)=3p1(L)"]).unwrap();
    let u = v(&t, "u");
    assert_eq!(cs.apply(&v(&t, "p1(T)")).unwrap(), (&u * &u).scale(&int(3)));
    let cs = ConstraintSet::parse(&b, &["c1(W)=0"]).unwrap();
    assert!(cs.apply(&v(&t, "e1(W)")).unwrap().is_zero());
    let free = &v(&t, "e2(W)") * &v(&t, "zeta");
    assert_eq!(cs.apply(&free).unwrap(), free);
    let cs = ConstraintSet::parse(&b, &["c1(W)=0", "p1(T)=p1(W)"]).unwrap();
    assert_eq!(cs.apply(&v(&t, "p1(T)")).unwrap(), v(&t, "e2(W)").scale(&int(-2)));
    assert!(Constraint::parse("c2(W)=7").is_err());
    assert!(ConstraintSet::parse(&b, &["c1(Q)=0"]).is_err());
}

#[test]
fn complex_tangent_group_eliminates_e2() {
    let vars = vec![Var::root("x1", "T"), Var::root("x2", "T"), Var::root("w1", "W"), Var::root("w2", "W")];
    let r = Ring::new(vars, 4, 0).unwrap();
    let b = ClassBasis::new(
        &r,
        vec![GroupSpec::new("T", GroupKind::Complex, ["x1", "x2"]), GroupSpec::new("W", GroupKind::Complex, ["w1", "w2"])],
    )
    .unwrap();
    let cs = ConstraintSet::parse(&b, &["c1(W)=0", "c1(T)=0", "p1(T)=p1(W)"]).unwrap();
    let t = b.target();
    assert_eq!(cs.apply(&v(t, "e2(T)")).unwrap(), v(t, "e2(W)"));
}

// ---------------------------------------------------------------- properties

fn arb_class(t: Arc<Ring>) -> impl Strategy<Value = GradedPoly> {
    let n = t.len();
    prop::collection::vec((prop::collection::vec(0u8..3, n), -4i64..5), 0..6)
        .prop_map(move |terms| GradedPoly::from_terms(&t, terms.into_iter().map(|(e, c)| (Mono::from_exps(&e), int(c)))))
}

fn ideal_generators(b: &ClassBasis) -> Vec<(Vec<&'static str>, GradedPoly)> {
    let t = b.target();
    let p1t = v(t, "p1(T)");
    let e1w = v(t, "e1(W)");
    let p1w = &(&e1w * &e1w) - &v(t, "e2(W)").scale(&int(2));
    let u2 = &v(t, "u") * &v(t, "u");
    vec![
        (vec!["c1(W)=0"], e1w.clone()),
        (vec!["c1(W)=0", "p1(T)=p1(W)"], &p1t - &p1w),
        (vec!["p1(T)=3p1(L)"], &p1t - &u2.scale(&int(3))),
        (vec!["p1(T)=p1(L)"], &p1t - &u2),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn class_basis_round_trip(c in arb_class(full().1.target().clone())) {
        let (_, b) = full();
        let c = c.embed(b.target()).unwrap();
        let f = b.expand(&c).unwrap();
        prop_assert_eq!(b.to_class_basis(&f).unwrap(), c);
        prop_assert_eq!(b.expand(&b.to_class_basis(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn constraints_are_idempotent(c in arb_class(full().1.target().clone()), which in 0usize..4) {
        let (_, b) = full();
        let c = c.embed(b.target()).unwrap();
        let (names, _) = &ideal_generators(&b)[which];
        let cs = ConstraintSet::parse(&b, names).unwrap();
        let once = cs.apply(&c).unwrap();
        prop_assert_eq!(cs.apply(&once).unwrap(), once);
    }

    #[test]
    fn ideal_members_reduce_to_zero(h in arb_class(full().1.target().clone()), which in 0usize..4) {
        let (_, b) = full();
        let h = h.embed(b.target()).unwrap();
        let (names, g) = &ideal_generators(&b)[which];
        let member = b.expand(&(&h * g)).unwrap();
        let cs = ConstraintSet::parse(&b, names).unwrap();
        prop_assert!(cs.apply(&b.to_class_basis(&member).unwrap()).unwrap().is_zero());
    }
}
