use proptest::prelude::*;

use super::*;
use crate::field::{Field, SquareTest};
use crate::poly::parse::parse_ternary;
use crate::poly::UniPoly;
use crate::scalars::{FieldDescriptor, FieldScalar};

const Q: FieldDescriptor = FieldDescriptor::Rationals;
const F101: FieldDescriptor = FieldDescriptor::PrimeField(101);
const F1009: FieldDescriptor = FieldDescriptor::PrimeField(1009);

fn affine(f: FieldDescriptor, pts: &[(i64, i64)]) -> PointConfiguration {
    PointConfiguration::new(f, pts.iter().map(|&(x, y)| PointSpec::affine(&f, f.from_i64(x), f.from_i64(y))).collect()).unwrap()
}

fn vanishes_on(form: &TernaryForm<FieldScalar>, f: FieldDescriptor, pts: &[(i64, i64)]) -> bool {
    pts.iter().all(|&(x, y)| f.is_zero(&form.eval(&f, &[f.from_i64(x), f.from_i64(y), f.one()])))
}

#[test]
fn monomial_basis() {
    assert_eq!(monomials(1), vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    assert_eq!(monomials(3).len(), 10);
}

#[test]
fn line_through_two_points() {
    let pts = [(1, 2), (3, 5)];
    let basis = interpolate_curves(&affine(Q, &pts), 1).unwrap();
    assert_eq!(basis.len(), 1);
    // 3x - 2y + 1, primitive with positive leading coefficient
    assert_eq!(crate::poly::parse::format_ternary(&basis[0]), "3*X0 - 2*X1 + X2");
}

#[test]
fn conic_through_five_points() {
    let pts = [(0, 1), (1, 0), (0, -1), (-1, 0), (3, 4)];
    let basis = interpolate_curves(&affine(Q, &pts), 2).unwrap();
    let [conic] = basis.as_slice() else { panic!("one conic expected") };
    assert!(vanishes_on(conic, Q, &pts));
}

#[test]
fn pencil_basis_is_integral_and_reduced() {
    let pts = [(0, 0), (1, 3), (2, -1), (-3, 2), (4, 5), (-2, -5), (5, -3), (3, 7)];
    let basis = interpolate_curves(&affine(Q, &pts), 3).unwrap();
    assert_eq!(basis.len(), 2);
    let ints: Vec<Vec<num_bigint::BigInt>> = basis
        .iter()
        .map(|b| b.terms().values().map(|c| c.as_rational().unwrap()).inspect(|q| assert!(q.is_integer())).map(|q| q.to_integer()).collect())
        .collect();
    for b in &basis {
        assert!(vanishes_on(b, Q, &pts));
    }
    let full = |b: &TernaryForm<FieldScalar>| monomials(3).iter().map(|m| b.coeff(&Q, *m).as_rational().unwrap().to_integer()).collect::<Vec<_>>();
    let (a, b) = (full(&basis[0]), full(&basis[1]));
    let dot = |u: &[num_bigint::BigInt], v: &[num_bigint::BigInt]| u.iter().zip(v).map(|(x, y)| x * y).sum::<num_bigint::BigInt>();
    // Lagrange-Gauss reduced: |2 <a, b>| <= <a, a> <= <b, b>
    assert!(dot(&a, &b) * 2u32 <= dot(&a, &a) && -(dot(&a, &b) * 2u32) <= dot(&a, &a));
    assert!(dot(&a, &a) <= dot(&b, &b));
    assert!(!ints.is_empty());
}

#[test]
fn small_degree_counts_are_one() {
    for (f, d, pts) in [
        (Q, 1, vec![(1, 2), (-4, 7)]),
        (Q, 2, vec![(0, 1), (1, 0), (0, -1), (-1, 0), (2, 5)]),
        (F101, 2, vec![(0, 1), (1, 0), (0, -1), (-1, 0), (2, 5)]),
    ] {
        let r = count_small_degree(&affine(f, &pts), d).unwrap();
        assert_eq!(r.rank(), 1);
        assert!(f.same_square_class(&r.form.entries()[0], &f.one()));
    }
}

#[test]
fn collinear_points_on_a_conic_are_not_generic() {
    let cfg = affine(Q, &[(0, 0), (1, 1), (2, 2), (5, -1), (3, 8)]);
    assert!(matches!(count_small_degree(&cfg, 2), Err(EnumError::NotGeneric(_))));
}

#[test]
fn point_count_and_degree_are_checked() {
    let cfg = affine(Q, &[(0, 0), (1, 1), (2, 5)]);
    assert!(matches!(welschinger_number(&cfg, 2, &PencilOptions::default()), Err(EnumError::InvalidConfiguration(_))));
    assert!(matches!(welschinger_number(&cfg, 4, &PencilOptions::default()), Err(EnumError::UnsupportedDegree(4))));
}

/// The 6×6 determinant and the elimination of the gradient minors give the
/// same monic discriminant.
#[test]
fn discriminant_routes_agree() {
    let opts = PencilOptions::default();
    for (f, seed) in [(F1009, 3), (F1009, 4), (Q, 5)] {
        let cfg = generate_config(f, &[1; 8], 3, seed).unwrap();
        let basis: [_; 2] = interpolate_curves(&cfg, 3).unwrap().try_into().unwrap();
        let disc = cubic_pencil_discriminant(f, &basis, &opts).unwrap();
        assert_eq!(disc.discriminant.deg(), PENCIL_NODES);
        let other = discriminant_by_elimination(f, &disc.basis, &opts).unwrap();
        assert_eq!(other, disc.discriminant, "{f} seed {seed}");
    }
}

#[test]
fn determinant_over_polynomials() {
    // [[t, 1], [1, t]] has determinant t^2 - 1
    let t = UniPoly::x(&Q);
    let one = UniPoly::one(&Q);
    let d = poly_det(&Q, &[vec![t.clone(), one.clone()], vec![one, t]]);
    assert_eq!(d, UniPoly::from_i64(&Q, &[-1, 0, 1]));
}

#[test]
fn cuspidal_member_is_not_generic() {
    let f0 = parse_ternary(&Q, "X1^2*X2 - X0^3").unwrap();
    let f1 = parse_ternary(&Q, "X0^3 + 2*X0*X1*X2 - 3*X1^3 + X0^2*X2 + 5*X2^3 - X1*X2^2").unwrap();
    let r = cubic_pencil_discriminant(Q, &[f0, f1], &PencilOptions::default());
    assert!(matches!(r, Err(EnumError::NotGeneric(_))), "{r:?}");
}

#[test]
fn three_collinear_points_make_a_binodal_member() {
    let pts = [(0, 0), (1, 1), (2, 2), (5, -1), (3, 8), (-4, 2), (6, 3), (-1, -7)];
    let basis: [_; 2] = interpolate_curves(&affine(Q, &pts), 3).unwrap().try_into().unwrap();
    assert!(matches!(cubic_pencil_discriminant(Q, &basis, &PencilOptions::default()), Err(EnumError::NotGeneric(_))));
}

#[test]
fn proportional_members_are_rejected() {
    let f0 = parse_ternary(&Q, "X0^3 + X1^3 + X2^3").unwrap();
    let f1 = f0.scale(&Q, &Q.from_i64(3));
    assert!(matches!(cubic_pencil_discriminant(Q, &[f0, f1], &PencilOptions::default()), Err(EnumError::NotGeneric(_))));
}

#[test]
fn prime_field_counts_have_rank_twelve_and_one_discriminant_per_type() {
    let opts = PencilOptions::default();
    for (f, kind) in [(F101, vec![1; 8]), (F1009, vec![1, 1, 1, 1, 1, 1, 2]), (F1009, vec![1, 1, 1, 1, 1, 3])] {
        let mut discs = Vec::new();
        for seed in 0..4 {
            let cfg = generate_config(f, &kind, 3, seed).unwrap();
            let r = welschinger_number(&cfg, 3, &PencilOptions { seed, ..opts.clone() }).unwrap();
            assert_eq!(r.rank(), 12);
            assert_eq!(r.extension_type, kind.clone().tap_sort());
            discs.push(r.invariants.disc.clone());
        }
        assert!(discs.windows(2).all(|w| w[0] == w[1]), "{f} {kind:?}");
    }
}

trait TapSort {
    fn tap_sort(self) -> Self;
}

impl TapSort for Vec<usize> {
    fn tap_sort(mut self) -> Self {
        self.sort();
        self
    }
}

#[test]
fn node_coordinates_satisfy_the_singular_equations() {
    let cfg = generate_config(F1009, &[1; 8], 3, 7).unwrap();
    let res = pencil_of(&cfg, &PencilOptions::default()).unwrap();
    let l = &res.discriminant.algebra;
    assert_eq!(l.degree(), 12);
    let n = l.norm(&res.e);
    assert!(!F1009.is_zero(&n));
}

#[test]
fn rational_count_matches_the_oracle() {
    let opts = PencilOptions::default();
    let cfg = generate_config(Q, &[1; 8], 3, 1).unwrap();
    let r = welschinger_number(&cfg, 3, &opts).unwrap();
    assert_eq!(r.rank(), 12);
    assert_eq!(r.signature(), Some(-8));
    let o = real_signature_oracle(&cfg, &opts).unwrap();
    assert_eq!(o.signature, -8);
    assert_eq!(o.real_roots, 8);
    assert_eq!((r.signature().unwrap() - r.rank() as i64) % 2, 0);
}

#[test]
fn move_test_on_one_configuration() {
    let cfg = generate_config(F1009, &[1; 8], 3, 2).unwrap();
    let m = move_test(&cfg, &cfg, 3, &PencilOptions::default()).unwrap();
    assert!(m.same_type);
    assert_eq!(m.comparison, Comparison::Equivalent);
}

#[test]
fn move_test_across_types_asserts_nothing() {
    let a = generate_config(F1009, &[1; 8], 3, 2).unwrap();
    let b = generate_config(F1009, &[1, 1, 1, 1, 1, 1, 2], 3, 2).unwrap();
    let m = move_test(&a, &b, 3, &PencilOptions::default()).unwrap();
    assert!(!m.same_type);
    assert_eq!(m.comparison, Comparison::Skipped);
}

#[test]
fn generation_is_seeded_and_typed() {
    let a = generate_config(Q, &[1, 1, 1, 1, 1, 1, 2], 3, 9).unwrap();
    let b = generate_config(Q, &[1, 1, 1, 1, 1, 1, 2], 3, 9).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.extension_type(), vec![1, 1, 1, 1, 1, 1, 2]);
    assert!(matches!(generate_config(Q, &[4], 3, 0), Err(EnumError::InvalidConfiguration(_))));
    for p in a.points() {
        if let PointSpec::Rational(c) = p {
            let x = c[0].as_rational().unwrap() / c[2].as_rational().unwrap();
            assert!(x.is_integer() && x.to_integer().magnitude() <= &20u32.into());
        }
    }
}

#[test]
fn fixed_residue_fields_are_irreducible() {
    for f in [Q, F101, F1009] {
        for k in [2, 3] {
            let m = fixed_orbit_modulus(&f, k).unwrap();
            assert_eq!(m.deg(), k);
            assert!(crate::etale::make_algebra(&f, &m).unwrap().components().len() == 1 || f == Q);
        }
    }
}

#[test]
fn config_file_roundtrip() {
    let cfg = generate_config(Q, &[1, 1, 1, 2, 3], 3, 4).unwrap();
    let file = ConfigFile::from_configuration(&cfg, Some(3));
    assert_eq!(file.to_configuration().unwrap(), cfg);
    let fp = generate_config(F101, &[1, 1, 2], 2, 4).unwrap();
    assert_eq!(ConfigFile::from_configuration(&fp, None).to_configuration().unwrap(), fp);
}

#[test]
fn batch_orders_match() {
    let opts = PencilOptions::default();
    let seeds = [3, 1, 2];
    let seq = run_batch_sequential(F1009, &[1; 8], 3, &seeds, &opts);
    let par = run_batch(F1009, &[1; 8], 3, &seeds, &opts);
    let key = |r: &BatchRun| match &r.outcome {
        BatchOutcome::Accepted(c) => format!("{} {}", r.seed, c.form),
        BatchOutcome::Rejected(w) => format!("{} rejected {w}", r.seed),
        BatchOutcome::Failed(e) => format!("{} failed {e}", r.seed),
    };
    assert_eq!(seq.iter().map(key).collect::<Vec<_>>(), par.iter().map(key).collect::<Vec<_>>());
    assert_eq!(seq.iter().map(|r| r.seed).collect::<Vec<_>>(), seeds);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Interpolated forms vanish at the points over 𝔽_1009.
    #[test]
    fn interpolation_vanishes(pts in proptest::collection::vec((-200i64..200, -200i64..200), 5)) {
        let mut uniq = pts.clone();
        uniq.sort();
        uniq.dedup();
        prop_assume!(uniq.len() == 5);
        let cfg = affine(F1009, &pts);
        if let Ok(basis) = interpolate_curves(&cfg, 2) {
            for b in &basis {
                prop_assert!(vanishes_on(b, F1009, &pts));
            }
        }
    }

    /// Rank law and parity on random prime-field pencils.
    #[test]
    fn rank_law_over_prime_fields(seed in 0u64..1000) {
        let cfg = generate_config(F1009, &[1; 8], 3, seed).unwrap();
        match welschinger_number(&cfg, 3, &PencilOptions { seed, ..PencilOptions::default() }) {
            Ok(r) => prop_assert_eq!(r.rank(), kontsevich_n(3).unwrap()[2].to_string().parse::<usize>().unwrap()),
            Err(EnumError::NotGeneric(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}
