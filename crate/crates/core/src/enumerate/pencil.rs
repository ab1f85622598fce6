//! The pencil of cubics through eight points: its singular members as a
//! degree-12 étale algebra `L = K[λ]/(D)` and the node of the member
//! `F0 + λ F1` with coordinates in `L`.
//!
//! `D` is the resultant of the three partials of `F = F0 + λ F1`, computed
//! as the 6×6 determinant of the coefficients of `F_i` and of the partials
//! of the Hessian of `F` in the quadratic monomials. At a nodal member the
//! Veronese image of the node spans its kernel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curvesing::{common_zero_at_infinity, eval_bipoly, random_invertible, solve_zero_dim, CurveError};
use crate::etale::{make_algebra, AlgebraElement, EtaleAlgebra};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::{BiPoly, RationalFunctionField, TernaryForm, UniPoly};
use crate::scalars::{FieldDescriptor, FieldScalar};

use super::{monomials, EnumError};

type Form = TernaryForm<FieldScalar>;
type Elem = AlgebraElement<FieldScalar>;
type Poly = UniPoly<FieldScalar>;

/// Number of singular members of a general pencil of plane cubics.
pub const PENCIL_NODES: usize = 12;
const NODE_ATTEMPTS: usize = 4;

#[derive(Clone, Debug)]
pub struct PencilOptions {
    pub seed: u64,
    pub max_coordinate_changes: usize,
    pub max_reparametrizations: i64,
    /// Shear budget of the elimination route.
    pub max_shear: usize,
}

impl Default for PencilOptions {
    fn default() -> Self {
        PencilOptions { seed: 0x5eed, max_coordinate_changes: 8, max_reparametrizations: 6, max_shear: 48 }
    }
}

/// Choices made while computing the discriminant, for replay.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PencilDiagnostics {
    pub coordinate_changes: usize,
    pub coordinate_change: Option<Vec<Vec<String>>>,
    /// `k` in `F1 <- F1 + k F0`.
    pub reparametrization: i64,
    pub split_events: usize,
}

/// Singular members of the pencil `F0 + λ F1`.
#[derive(Clone, Debug)]
pub struct PencilDiscriminant {
    /// Basis after coordinate change and reparametrization.
    pub basis: [Form; 2],
    /// Monic, squarefree, of degree 12.
    pub discriminant: Poly,
    pub algebra: EtaleAlgebra<FieldDescriptor>,
    /// Rows `F_0, F_1, F_2, H_0, H_1, H_2` over `K[λ]` in the basis of
    /// quadratic monomials.
    pub matrix: Vec<Vec<Poly>>,
    pub diagnostics: PencilDiagnostics,
}

/// The node of the generic singular member.
#[derive(Clone, Debug)]
pub struct PencilResult {
    pub discriminant: PencilDiscriminant,
    /// Homogeneous coordinates `(X0 : X1 : X2)` of the node, `X2` a unit.
    pub node: [Elem; 3],
    /// `X2^2` times the Hessian determinant of `f0 + λ f1` at the affine
    /// node, so of the same square class.
    pub e: Elem,
}

fn gradient_minors(f: &FieldDescriptor, g0: &Form, g1: &Form) -> Vec<Form> {
    let p: Vec<Form> = (0..3).map(|i| g0.partial(f, i)).collect();
    let q: Vec<Form> = (0..3).map(|i| g1.partial(f, i)).collect();
    [(0, 1), (0, 2), (1, 2)].iter().map(|&(i, j)| p[i].mul(f, &q[j]).sub(f, &p[j].mul(f, &q[i]))).collect()
}

fn matrix_strings(m: &Matrix<FieldScalar>) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
}

fn not_generic(e: CurveError) -> EnumError {
    match e {
        CurveError::PositiveDimensional | CurveError::NotReduced => EnumError::NotGeneric(format!("singular scheme of the pencil: {e}")),
        other => EnumError::Curve(other),
    }
}

/// The 6×6 matrix over `K[λ]` whose determinant is the discriminant of
/// `g0 + λ g1` up to a constant.
pub fn resultant_matrix(f: FieldDescriptor, g0: &Form, g1: &Form) -> Vec<Vec<Poly>> {
    let k = RationalFunctionField::new(f);
    let lam = k.variable();
    let lift = |g: &Form| g.map(&k, |c| k.from_base(c.clone()));
    let member = lift(g0).add(&k, &lift(g1).scale(&k, &lam));
    let grad: Vec<_> = (0..3).map(|i| member.partial(&k, i)).collect();
    let h: Vec<Vec<_>> = grad.iter().map(|g| (0..3).map(|j| g.partial(&k, j)).collect()).collect();
    let minor = |i: usize, j: usize, a: usize, b: usize| h[i][a].mul(&k, &h[j][b]).sub(&k, &h[i][b].mul(&k, &h[j][a]));
    let hess = h[0][0].mul(&k, &minor(1, 2, 1, 2)).sub(&k, &h[0][1].mul(&k, &minor(1, 2, 0, 2))).add(&k, &h[0][2].mul(&k, &minor(1, 2, 0, 1)));
    let rows = grad.into_iter().chain((0..3).map(|i| hess.partial(&k, i)));
    rows.map(|q| {
        monomials(2)
            .iter()
            .map(|m| {
                let c = q.coeff(&k, *m);
                debug_assert!(c.den.deg() == 0);
                c.num
            })
            .collect()
    })
    .collect()
}

/// Determinant over `K[λ]` by fraction-free elimination.
pub fn poly_det(f: &FieldDescriptor, m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let mut a = m.to_vec();
    let mut prev = UniPoly::one(f);
    let mut sign = false;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return UniPoly::zero();
        };
        if p != c {
            a.swap(p, c);
            sign = !sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let t = a[c][c].mul(f, &a[i][j]).sub(f, &a[i][c].mul(f, &a[c][j]));
                let (q, r) = t.div_rem(f, &prev).expect("nonzero pivot");
                debug_assert!(r.is_zero());
                a[i][j] = q;
            }
            a[i][c] = UniPoly::zero();
        }
        prev = a[c][c].clone();
    }
    if sign {
        prev.neg(f)
    } else {
        prev
    }
}

/// `D(λ)` of degree 12 and `L = K[λ]/(D)`; `NotGeneric` unless the pencil
/// has twelve distinct singular members, none of them singular at infinity.
pub fn cubic_pencil_discriminant(f: FieldDescriptor, basis: &[Form; 2], opts: &PencilOptions) -> Result<PencilDiscriminant, EnumError> {
    if basis.iter().any(|b| b.degree() != 3) {
        return Err(EnumError::InvalidConfiguration("pencil members must be cubics".into()));
    }
    if matches!(f.characteristic(), 2 | 3) {
        return Err(EnumError::InvalidConfiguration("cubic pencils need characteristic 0 or at least 5".into()));
    }
    let mut diagnostics = PencilDiagnostics::default();
    let forms = affine_singular_points(f, basis, opts, &mut diagnostics)?;
    for k in 0..=opts.max_reparametrizations {
        let g1 = if k == 0 { forms[1].clone() } else { forms[1].add(&f, &forms[0].scale(&f, &f.from_i64(k))) };
        let matrix = resultant_matrix(f, &forms[0], &g1);
        let d = poly_det(&f, &matrix);
        if d.is_zero() {
            return Err(EnumError::NotGeneric("every member of the pencil is singular".into()));
        }
        if d.deg() < PENCIL_NODES {
            continue;
        }
        let d = d.monic(&f);
        if !d.is_squarefree(&f)? {
            return Err(EnumError::NotGeneric("discriminant of the pencil has a repeated root".into()));
        }
        diagnostics.reparametrization = k;
        let algebra = make_algebra(&f, &d)?;
        return Ok(PencilDiscriminant { basis: [forms[0].clone(), g1], discriminant: d, algebra, matrix, diagnostics });
    }
    Err(EnumError::NotGeneric("every reparametrization leaves a singular member at infinity".into()))
}

/// Change coordinates until no member is singular on the line `X2 = 0`.
fn affine_singular_points(f: FieldDescriptor, basis: &[Form; 2], opts: &PencilOptions, diagnostics: &mut PencilDiagnostics) -> Result<[Form; 2], EnumError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut forms = basis.clone();
    for attempt in 0..=opts.max_coordinate_changes {
        let minors = gradient_minors(&f, &forms[0], &forms[1]);
        if minors.iter().all(|m| m.is_zero()) {
            return Err(EnumError::NotGeneric("pencil members are proportional".into()));
        }
        if !common_zero_at_infinity(&f, &minors) {
            return Ok(forms);
        }
        if attempt == opts.max_coordinate_changes {
            break;
        }
        let m = random_invertible(&f, &mut rng);
        forms = [basis[0].coordinate_change(&f, &m)?, basis[1].coordinate_change(&f, &m)?];
        diagnostics.coordinate_changes = attempt + 1;
        diagnostics.coordinate_change = Some(matrix_strings(&m));
    }
    // Random lines keep meeting the singular locus: it is not finite, so the
    // members share a component.
    Err(EnumError::NotGeneric(format!(
        "singular locus of the pencil meets {} random lines at infinity",
        opts.max_coordinate_changes + 1
    )))
}

/// Coordinate `j` of an adjugate combination of the resultant matrix: the
/// determinant with column `j` replaced by `r`. At a member with a single
/// node these coordinates are proportional to the node's Veronese image.
fn cramer_coordinate(f: &FieldDescriptor, matrix: &[Vec<Poly>], j: usize, r: &[i64]) -> Poly {
    let m: Vec<Vec<Poly>> = matrix.iter().zip(r).map(|(row, &ri)| {
        let mut row = row.clone();
        row[j] = UniPoly::constant(f, f.from_i64(ri));
        row
    }).collect();
    poly_det(f, &m)
}

fn monomial_index(e: [u32; 3]) -> usize {
    monomials(2).iter().position(|m| *m == e).expect("quadratic monomial")
}

fn eval_form(l: &EtaleAlgebra<FieldDescriptor>, g: &Form, p: &[Elem; 3]) -> Elem {
    let pows: Vec<Vec<Elem>> = p
        .iter()
        .map(|c| {
            let mut v = vec![l.one()];
            for k in 1..=g.degree() as usize {
                v.push(l.mul(&v[k - 1], c));
            }
            v
        })
        .collect();
    g.terms().iter().fold(l.element(&UniPoly::zero()), |acc, (e, c)| {
        let m = l.mul(&l.mul(&pows[0][e[0] as usize], &pows[1][e[1] as usize]), &pows[2][e[2] as usize]);
        l.add(&acc, &l.scale(&m, c))
    })
}

fn is_unit(l: &EtaleAlgebra<FieldDescriptor>, a: &Elem) -> bool {
    let f = *l.base();
    l.components().iter().zip(a.residues()).all(|(c, r)| !r.is_zero() && r.gcd(&f, c).deg() == 0)
}

/// Homogeneous coordinates of the node in `L` and its Hessian class;
/// `NotGeneric` if some member is not nodal.
pub fn node_over_discriminant(disc: PencilDiscriminant) -> Result<PencilResult, EnumError> {
    let f = *disc.algebra.base();
    let l = disc.algebra.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(disc.diagnostics.reparametrization as u64);
    let node = (0..NODE_ATTEMPTS)
        .map(|_| {
            let r: Vec<i64> = (0..6).map(|_| rng.gen_range(-9..=9)).collect();
            [[1, 0, 1], [0, 1, 1], [0, 0, 2]].map(|e| l.element(&cramer_coordinate(&f, &disc.matrix, monomial_index(e), &r)))
        })
        .find(|p| is_unit(&l, &p[2]))
        .ok_or_else(|| EnumError::NotGeneric("the resultant matrix has corank above one at a member".into()))?;
    let t = l.generator();
    let member = |g0: &Form, g1: &Form| l.add(&eval_form(&l, g0, &node), &l.mul(&t, &eval_form(&l, g1, &node)));
    let [g0, g1] = &disc.basis;
    let residual_ok = l.is_zero(&member(g0, g1)) && (0..3).all(|i| l.is_zero(&member(&g0.partial(&f, i), &g1.partial(&f, i))));
    if !residual_ok {
        return Err(EnumError::Curve(CurveError::ResidualCheckFailed));
    }
    let second = |i: usize, j: usize| member(&g0.partial(&f, i).partial(&f, j), &g1.partial(&f, i).partial(&f, j));
    let e = l.sub(&l.mul(&second(0, 0), &second(1, 1)), &l.mul(&second(0, 1), &second(0, 1)));
    if !is_unit(&l, &e) {
        return Err(EnumError::NotGeneric("a singular member is not nodal".into()));
    }
    Ok(PencilResult { discriminant: disc, node, e })
}

/// `D` by an independent route: solve the vanishing of the gradient minors
/// of `(g0, g1)`, evaluate `λ = -g0/g1` at the solutions and take its
/// minimal polynomial. Monic; the basis must already be affine-generic.
pub fn discriminant_by_elimination(f: FieldDescriptor, basis: &[Form; 2], opts: &PencilOptions) -> Result<Poly, EnumError> {
    let minors: Vec<BiPoly<FieldScalar>> = gradient_minors(&f, &basis[0], &basis[1]).iter().map(|m| m.dehomogenize(&f, 2)).collect();
    let sol = solve_zero_dim(&f, &minors, opts.max_shear).map_err(not_generic)?;
    let Some(sol) = sol else {
        return Err(EnumError::NotGeneric("no singular members".into()));
    };
    let mut points = sol.algebra;
    let v0 = eval_bipoly(&points, &basis[0].dehomogenize(&f, 2), &sol.x, &sol.y);
    let v1 = eval_bipoly(&points, &basis[1].dehomogenize(&f, 2), &sol.x, &sol.y);
    let inv = points.invert(&v1).map_err(|_| EnumError::NotGeneric("a singular point lies on the member at infinity".into()))?;
    let lambda = points.scale(&points.mul(&v0, &inv), &f.from_i64(-1));
    Ok(points.minimal_polynomial(&lambda))
}
