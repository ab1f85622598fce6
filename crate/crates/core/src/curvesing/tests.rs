use proptest::prelude::*;

use super::*;
use crate::poly::RationalFunctionField;
use crate::scalars::FieldScalar;

const Q: FieldDescriptor = FieldDescriptor::Rationals;

fn curve(text: &str) -> PlaneCurve<FieldDescriptor> {
    PlaneCurve::parse(Q, text).unwrap()
}

fn affine_curve(terms: &[((u32, u32), i64)], d: u32) -> PlaneCurve<FieldDescriptor> {
    let p = BiPoly::from_terms(&Q, terms.iter().map(|(e, c)| (*e, Q.from_i64(*c))));
    PlaneCurve::new(Q, TernaryForm::homogenize(&Q, &p, d).unwrap()).unwrap()
}

const NODAL_CUBIC: &str = "X2*X1^2 - X0^3 - X0^2*X2";

#[test]
fn genus_of_lines_and_conics() {
    assert_eq!(curve("X0 + 2*X1").arithmetic_genus(), 0);
    assert_eq!(curve("X0^2 + X1^2 - X2^2").arithmetic_genus(), 0);
    assert_eq!(curve(NODAL_CUBIC).arithmetic_genus(), 1);
}

#[test]
fn smooth_conic_has_empty_locus() {
    let c = curve("X0^2 + X1^2 - X2^2");
    let locus = singular_locus(&c, &WelOptions::default()).unwrap();
    assert_eq!(locus.degree(), 0);
    let w = welschinger_class(&c, &WelOptions::default()).unwrap();
    assert_eq!(w.node_count, 0);
    assert!(Q.equal(&w.norm, &Q.one()));
}

#[test]
fn nodal_cubic_locus_and_invariant() {
    let c = curve(NODAL_CUBIC);
    let mut locus = singular_locus(&c, &WelOptions::default()).unwrap();
    assert_eq!(locus.degree(), 1);
    let pts = locus.points.clone().unwrap();
    assert!(pts.algebra.is_zero(&pts.x) && pts.algebra.is_zero(&pts.y));
    let e = local_invariant(&mut locus).unwrap().unwrap();
    assert!(Q.equal(&pts.algebra.norm(&e), &Q.from_i64(-4)));
    let w = welschinger_class(&c, &WelOptions::default()).unwrap();
    assert_eq!(w.node_count, 1);
    assert!(w.same_class(&Q, &Q.from_i64(-1)));
    assert!(w.form().equivalent(&QuadForm::from_i64s(Q, &[-1]).unwrap()).unwrap());
}

#[test]
fn quartic_with_conjugate_nodes() {
    // (x^2 - 5)^2 + y^2 (y^2 - 1): nodes at x^2 = 5, y = 0
    let c = affine_curve(&[((4, 0), 1), ((2, 0), -10), ((0, 0), 25), ((0, 4), 1), ((0, 2), -1)], 4);
    let mut locus = singular_locus(&c, &WelOptions::default()).unwrap();
    let pts = locus.points.clone().unwrap();
    assert_eq!(pts.projection, 0);
    assert_eq!(pts.algebra.components(), &[UniPoly::from_i64(&Q, &[-5, 0, 1])]);
    let e = local_invariant(&mut locus).unwrap().unwrap();
    assert!(pts.algebra.is_zero(&pts.algebra.sub(&e, &pts.algebra.from_base(&Q.from_i64(-80)))));
    let kinds = classify_locus(&locus).unwrap();
    assert!(kinds.iter().all(|(_, k)| *k == SingularityKind::Node));
    assert!(matches!(welschinger_class(&c, &WelOptions::default()), Err(CurveError::WrongNodeCount { expected: 3, found: 2 })));
}

fn classify_origin(terms: &[((u32, u32), i64)]) -> SingularityKind {
    let p = BiPoly::from_terms(&Q, terms.iter().map(|(e, c)| (*e, Q.from_i64(*c))));
    classify_point(&Q, &p, |c| c.clone(), &Q.zero(), &Q.zero()).unwrap()
}

#[test]
fn classify_local_models() {
    assert_eq!(classify_origin(&[((0, 2), 1), ((3, 0), -1)]), SingularityKind::Cusp);
    assert_eq!(classify_origin(&[((0, 2), 1), ((4, 0), -1)]), SingularityKind::Tacnode);
    assert_eq!(classify_origin(&[((2, 1), 1), ((1, 2), -1)]), SingularityKind::TriplePoint);
    assert_eq!(classify_origin(&[((2, 0), 1), ((0, 2), -1)]), SingularityKind::Node);
    assert_eq!(classify_origin(&[((0, 2), 1), ((5, 0), -1)]), SingularityKind::Other);
    assert_eq!(classify_origin(&[((2, 1), 1), ((0, 4), 1)]), SingularityKind::Other);
    let p = BiPoly::from_terms(&Q, [((0, 2), Q.one()), ((1, 0), Q.one())]);
    assert_eq!(classify_point(&Q, &p, |c| c.clone(), &Q.zero(), &Q.zero()), Err(CurveError::NonSingularPoint));
}

#[test]
fn local_models_of_nodes() {
    // x^2 - y^2 and x^2 + y^2 closed up by a cubic term
    for (sign, class) in [(-1, -1), (1, 1)] {
        let c = affine_curve(&[((2, 0), 1), ((0, 2), sign), ((3, 0), 1)], 3);
        let mut locus = singular_locus(&c, &WelOptions::default()).unwrap();
        let e = local_invariant(&mut locus).unwrap().unwrap();
        let alg = &locus.points.as_ref().unwrap().algebra;
        assert_eq!(alg.degree(), 1);
        assert!(Q.equal(&alg.norm(&e), &Q.from_i64(4 * sign)));
        assert!(Q.same_square_class(&alg.norm(&e), &Q.from_i64(class)));
    }
}

#[test]
fn cusp_is_not_nodal() {
    let c = curve("X2*X1^2 - X0^3");
    assert_eq!(welschinger_class(&c, &WelOptions::default()).unwrap_err(), CurveError::NotNodal(vec![SingularityKind::Cusp]));
}

#[test]
fn reducible_cubic_is_rejected() {
    // conic x^2 + y^2 = 1 and line x = 0
    let c = affine_curve(&[((3, 0), 1), ((1, 2), 1), ((1, 0), -1)], 3);
    let opts = WelOptions { enforce_node_count: false, ..WelOptions::default() };
    assert_eq!(welschinger_class(&c, &opts).unwrap_err(), CurveError::NotIntegral);
}

#[test]
fn squared_form_is_positive_dimensional() {
    let c = curve("X0^2*X1^2 + 2*X0*X1*X2^2 + X2^4");
    assert_eq!(welschinger_class(&c, &WelOptions::default()).unwrap_err(), CurveError::NotIntegral);
}

#[test]
fn singular_point_at_infinity_triggers_change() {
    // the nodal cubic with the node moved to [1:0:0]
    let c = curve("X0*X1^2 - X2^3 - X2^2*X0");
    let locus = singular_locus(&c, &WelOptions::default()).unwrap();
    assert!(locus.coordinate_change.is_some());
    let w = welschinger_class(&c, &WelOptions::default()).unwrap();
    assert!(w.same_class(&Q, &Q.from_i64(-1)));
}

#[test]
fn base_change_to_quadratic_extensions() {
    for (p, modulus) in [(5u64, vec![3, 0, 1]), (7, vec![1, 0, 1])] {
        let fp = FieldDescriptor::prime_field(p).unwrap();
        let c = PlaneCurve::parse(fp, NODAL_CUBIC).unwrap();
        let w = welschinger_class(&c, &WelOptions::default()).unwrap();
        let ext = FiniteExtension::new(fp, modulus.clone()).unwrap();
        let cl = base_change_curve(&c, &modulus).unwrap();
        let wl = welschinger_class(&cl, &WelOptions::default()).unwrap();
        assert!(ext.same_square_class(&wl.norm, &ext.embed(&w.norm)));
        // every base scalar is a square upstairs
        assert!(ext.is_square(&wl.norm));
    }
    // -4 is a nonresidue mod 7
    let f7 = FieldDescriptor::prime_field(7).unwrap();
    let w = welschinger_class(&PlaneCurve::parse(f7, NODAL_CUBIC).unwrap(), &WelOptions::default()).unwrap();
    assert!(!f7.is_square(&w.norm));
    // degree-one modulus leaves the class alone
    let f5 = FieldDescriptor::prime_field(5).unwrap();
    let c = PlaneCurve::parse(f5, NODAL_CUBIC).unwrap();
    let w1 = welschinger_class(&base_change_curve(&c, &[2, 1]).unwrap(), &WelOptions::default()).unwrap();
    assert_eq!(w1.norm, vec![1]);
    assert!(matches!(base_change_curve(&c, &[4, 0, 1]), Err(CurveError::ReducibleModulus)));
}

#[test]
fn three_line_cubic() {
    let c = triple_point_curve(Q, &Q.from_i64(2), &Q.one()).unwrap();
    let opts = WelOptions { enforce_node_count: false, assume_integral: true, ..WelOptions::default() };
    let w = welschinger_class(&c, &opts).unwrap();
    assert_eq!(w.node_count, 3);
    assert!(w.same_class(&Q, &Q.from_i64(-2)));
    assert_eq!(welschinger_class(&c, &WelOptions::default()).unwrap_err(), CurveError::WrongNodeCount { expected: 1, found: 3 });
}

#[test]
fn tacnode_examples() {
    let r = tacnode_deformation_check(&Q.from_i64(3), &Q.from_i64(4)).unwrap();
    assert!(r.passed());
    assert_eq!(r.expected, "5");
    let r = tacnode_deformation_check(&Q.one(), &Q.from_i64(2)).unwrap();
    assert!(r.passed());
    assert_eq!(r.node_algebra, vec!["t^2 - 2".to_string()]);
    assert_eq!(r.expected, "-1");
    assert_eq!(tacnode_deformation_check(&Q.from_i64(2), &Q.from_i64(4)).unwrap_err(), CurveError::DegenerateParameters("a^2 = u"));
    assert_eq!(tacnode_deformation_check(&Q.zero(), &Q.from_i64(4)).unwrap_err(), CurveError::DegenerateParameters("a = 0"));
}

type Qa = RationalFunctionField<FieldDescriptor>;
type Qau = RationalFunctionField<Qa>;

#[test]
fn tacnode_identity_with_generic_parameters() {
    let qa = Qa::new(Q);
    let qau = Qau::new(qa.clone());
    let a = qau.from_base(qa.variable());
    let u = qau.variable();
    let id = tacnode_identity(&qau, &a, &u).unwrap();
    assert_eq!(id.node_count, 2);
    assert!(id.nodes_located && id.hessian_identity && id.norm_identity);
    // Nm(e) = (a^2 - u) * Nm(4x)^2 = (a^2 - u) * 256 u^2
    let a2u = qau.sub(&qau.mul(&a, &a), &u);
    let expect = qau.mul(&a2u, &qau.mul(&qau.from_i64(256), &qau.mul(&u, &u)));
    assert!(qau.equal(&id.norm_e, &expect));

    // specialize the generic class and compare with direct computations
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
    let mut checked = 0;
    while checked < 50 {
        use rand::Rng;
        let a0 = Q.rational(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        let u0 = Q.rational(rng.gen_range(-30..=30), rng.gen_range(1..=4));
        let Ok(r) = tacnode_deformation_check(&a0, &u0) else { continue };
        let inner = qau.eval(&id.norm_e, &qa.from_base(u0.clone())).unwrap();
        let generic = qa.eval(&inner, &a0).unwrap();
        let direct = tacnode_identity(&Q, &a0, &u0).unwrap().norm_e;
        assert!(r.passed(), "{r:?}");
        assert!(Q.same_square_class(&generic, &direct));
        assert!(Q.same_square_class(&direct, &Q.sub(&Q.mul(&a0, &a0), &u0)));
        checked += 1;
    }
}

fn nonzero_rational() -> impl Strategy<Value = FieldScalar> {
    (-40i64..=40, 1i64..=9).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| Q.rational(n, d))
}

fn invertible() -> impl Strategy<Value = Matrix<FieldScalar>> {
    proptest::collection::vec(-3i64..=3, 9)
        .prop_map(|v| Matrix::from_rows((0..3).map(|i| (0..3).map(|j| Q.from_i64(v[3 * i + j])).collect()).collect()))
        .prop_filter("invertible", |m| !Q.is_zero(&m.det(&Q)))
}

/// `y^2 = x^2 (x + b)`: one node with class `<-b>`.
fn nodal(b: &FieldScalar) -> PlaneCurve<FieldDescriptor> {
    let x = BiPoly::x(&Q);
    let y = BiPoly::y(&Q);
    let p = y.mul(&Q, &y).sub(&Q, &x.mul(&Q, &x).mul(&Q, &x.add(&Q, &BiPoly::constant(&Q, b.clone()))));
    PlaneCurve::new(Q, TernaryForm::homogenize(&Q, &p, 3).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariant_under_coordinates_and_charts(
        b in nonzero_rational(),
        m in invertible(),
        chart in proptest::collection::vec(-4i64..=4, 3).prop_filter("nonzero", |v| v.iter().any(|c| *c != 0)),
    ) {
        let c = nodal(&b).transformed(&m).unwrap().with_chart([0, 1, 2].map(|i| Q.from_i64(chart[i]))).unwrap();
        let w = welschinger_class(&c, &WelOptions::default()).unwrap();
        prop_assert_eq!(w.node_count, 1);
        prop_assert!(w.same_class(&Q, &Q.neg(&b)));
    }

    #[test]
    fn invariant_under_scaling(b in nonzero_rational(), lambda in nonzero_rational()) {
        let c = nodal(&b);
        let w = welschinger_class(&c, &WelOptions::default()).unwrap();
        let wl = welschinger_class(&c.scaled(&lambda), &WelOptions::default()).unwrap();
        prop_assert!(Q.same_square_class(&w.norm, &wl.norm));
    }

    #[test]
    fn triple_point_family(a in nonzero_rational(), u in nonzero_rational()) {
        let c = triple_point_curve(Q, &a, &u).unwrap();
        let opts = WelOptions { enforce_node_count: false, assume_integral: true, ..WelOptions::default() };
        let w = welschinger_class(&c, &opts).unwrap();
        prop_assert!(w.same_class(&Q, &Q.neg(&a)));
    }
}

/// Planted singularities at the origin with a generic cubic or quartic tail.
#[test]
fn classification_agrees_with_local_invariant() {
    let corpus: Vec<(Vec<((u32, u32), i64)>, u32, SingularityKind)> = vec![
        (vec![((2, 0), 1), ((0, 2), -1), ((3, 0), 1)], 3, SingularityKind::Node),
        (vec![((2, 0), 1), ((1, 1), 1), ((0, 2), 1), ((0, 3), 1)], 3, SingularityKind::Node),
        (vec![((2, 0), 2), ((0, 2), 3), ((3, 0), 1), ((1, 2), 1)], 3, SingularityKind::Node),
        (vec![((0, 2), 1), ((3, 0), -1)], 3, SingularityKind::Cusp),
        (vec![((0, 2), 1), ((3, 0), -1), ((2, 1), 2)], 3, SingularityKind::Cusp),
        (vec![((0, 2), 1), ((4, 0), -1), ((0, 4), 1)], 4, SingularityKind::Tacnode),
        (vec![((0, 2), 1), ((4, 0), -1), ((1, 3), 3)], 4, SingularityKind::Tacnode),
        (vec![((2, 1), 1), ((1, 2), -1), ((4, 0), 1), ((0, 4), 1)], 4, SingularityKind::TriplePoint),
        (vec![((3, 0), 1), ((0, 3), 1), ((4, 0), 1), ((0, 4), -2)], 4, SingularityKind::TriplePoint),
    ];
    for (terms, d, kind) in corpus {
        let c = affine_curve(&terms, d);
        let mut locus = singular_locus(&c, &WelOptions::default()).unwrap_or_else(|e| panic!("{terms:?}: {e}"));
        let kinds = classify_locus(&locus).unwrap();
        let all_nodes = kinds.iter().all(|(_, k)| *k == SingularityKind::Node);
        assert!(kinds.iter().any(|(_, k)| *k == kind), "{terms:?}: {kinds:?}");
        assert_eq!(local_invariant(&mut locus).is_ok(), all_nodes, "{terms:?}");
    }
}
