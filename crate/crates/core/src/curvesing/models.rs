//! Local models: the deformed tacnode `y^2 = (x + a)(x^2 - u)^2` and the
//! triple-point family `y((y + u)^2 - a x^2)`.

use serde::Serialize;

use crate::field::{Field, SquareTest};
use crate::poly::parse::format_uni;
use crate::poly::{BiPoly, TernaryForm};
use crate::scalars::{FieldDescriptor, FieldScalar};

use super::solve::{eval_bipoly, solve_zero_dim};
use super::{hessian_determinant, CurveError, PlaneCurve};

/// Exact identities checked on the two nodes of the deformed tacnode.
#[derive(Clone, Debug)]
pub struct TacnodeIdentity<F: Field> {
    pub node_count: usize,
    /// The nodes satisfy `x^2 = u`, `y = 0`.
    pub nodes_located: bool,
    /// `e = (-x - a)(4x)^2` in the node algebra.
    pub hessian_identity: bool,
    /// `Nm(-x - a) = a^2 - u`.
    pub norm_identity: bool,
    pub norm_e: F::Elem,
}

fn tacnode_equation<F: Field>(f: &F, a: &F::Elem, u: &F::Elem) -> BiPoly<F::Elem> {
    let x = BiPoly::x(f);
    let y = BiPoly::y(f);
    let xa = x.add(f, &BiPoly::constant(f, a.clone()));
    let q = x.mul(f, &x).sub(f, &BiPoly::constant(f, u.clone()));
    y.mul(f, &y).sub(f, &xa.mul(f, &q.mul(f, &q)))
}

/// Run the checks over any field containing `a` and `u` (including
/// function fields with `a`, `u` transcendental).
pub fn tacnode_identity<F: Field>(f: &F, a: &F::Elem, u: &F::Elem) -> Result<TacnodeIdentity<F>, CurveError> {
    if f.is_zero(a) {
        return Err(CurveError::DegenerateParameters("a = 0"));
    }
    if f.is_zero(u) {
        return Err(CurveError::DegenerateParameters("u = 0"));
    }
    let a2u = f.sub(&f.mul(a, a), u);
    if f.is_zero(&a2u) {
        return Err(CurveError::DegenerateParameters("a^2 = u"));
    }
    let p = tacnode_equation(f, a, u);
    let sol = solve_zero_dim(f, &[p.clone(), p.partial_x(f), p.partial_y(f)], 16)?.ok_or(CurveError::NotANode)?;
    let alg = &sol.algebra;
    let (x, y) = (&sol.x, &sol.y);
    let nodes_located = alg.is_zero(&alg.sub(&alg.mul(x, x), &alg.from_base(u))) && alg.is_zero(y);
    let e = eval_bipoly(alg, &hessian_determinant(f, &p), x, y);
    let lin = alg.sub(&alg.scale(x, &f.from_i64(-1)), &alg.from_base(a));
    let four_x = alg.scale(x, &f.from_i64(4));
    let rhs = alg.mul(&lin, &alg.mul(&four_x, &four_x));
    Ok(TacnodeIdentity {
        node_count: alg.degree(),
        nodes_located,
        hessian_identity: alg.is_zero(&alg.sub(&e, &rhs)),
        norm_identity: f.equal(&alg.norm(&lin), &a2u),
        norm_e: alg.norm(&e),
    })
}

/// Verification record for a rational instance of the deformed tacnode.
#[derive(Clone, Debug, Serialize)]
pub struct TacnodeRecord {
    pub a: String,
    pub u: String,
    pub node_algebra: Vec<String>,
    pub node_count: usize,
    pub nodes_located: bool,
    pub hessian_identity: bool,
    pub norm_identity: bool,
    /// `Nm(e)` and `a^2 - u` lie in the same square class.
    pub class_matches: bool,
    pub norm: String,
    pub expected: String,
}

impl TacnodeRecord {
    pub fn passed(&self) -> bool {
        self.node_count == 2 && self.nodes_located && self.hessian_identity && self.norm_identity && self.class_matches
    }
}

pub fn tacnode_deformation_check(a: &FieldScalar, u: &FieldScalar) -> Result<TacnodeRecord, CurveError> {
    let f = a.descriptor();
    let id = tacnode_identity(&f, a, u)?;
    let expected = f.sub(&f.mul(a, a), u);
    let p = tacnode_equation(&f, a, u);
    let sol = solve_zero_dim(&f, &[p.clone(), p.partial_x(&f), p.partial_y(&f)], 16)?.ok_or(CurveError::NotANode)?;
    Ok(TacnodeRecord {
        a: a.to_string(),
        u: u.to_string(),
        node_algebra: sol.algebra.components().iter().map(|m| format_uni(m, "t")).collect(),
        node_count: id.node_count,
        nodes_located: id.nodes_located,
        hessian_identity: id.hessian_identity,
        norm_identity: id.norm_identity,
        class_matches: f.same_square_class(&id.norm_e, &expected),
        norm: id.norm_e.to_string(),
        expected: expected.to_string(),
    })
}

/// The three-line cubic `y((y + u)^2 - a x^2) = 0`.
pub fn triple_point_curve(f: FieldDescriptor, a: &FieldScalar, u: &FieldScalar) -> Result<PlaneCurve<FieldDescriptor>, CurveError> {
    let x = BiPoly::x(&f);
    let y = BiPoly::y(&f);
    let yu = y.add(&f, &BiPoly::constant(&f, u.clone()));
    let p = y.mul(&f, &yu.mul(&f, &yu).sub(&f, &x.mul(&f, &x).scale(&f, a)));
    PlaneCurve::new(f, TernaryForm::homogenize(&f, &p, 3)?)
}
