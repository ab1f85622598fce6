//! Trace form of the local double cover at a cusp.
//!
//! Near the cusp the two branches are `u^2 + P s u - Q s = 0`; with
//! `alpha = u + sP/2` one has `alpha^2 = v s`, and the Hessian-type unit is
//! `U = U1 + V1 alpha`. The form is `Tr(u U x y)` on the basis `(1, alpha)`.

use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::{RationalFunctionField, UniPoly};
use crate::scalars::{FieldDescriptor, FieldScalar};

use super::function::{FunctionFieldForm, Rf};
use super::GwError;

type P = UniPoly<FieldScalar>;

#[derive(Clone, Debug)]
pub struct CuspTraceForm {
    pub base: FieldDescriptor,
    /// Gram matrix on `(1, alpha)`.
    pub raw: Matrix<Rf>,
    /// Gram matrix on `(1, alpha / s)`.
    pub reduced: Matrix<Rf>,
    /// `s v (2 V1 v - U1 P)^2 - v^2 (2 U1 - s V1 P)^2`.
    pub reduced_det: P,
}

impl CuspTraceForm {
    pub fn reduced_det_at_zero(&self) -> FieldScalar {
        self.reduced_det.eval(&self.base, &self.base.zero())
    }

    /// Diagonalization of the raw Gram matrix over K(s).
    pub fn form(&self) -> Result<FunctionFieldForm, GwError> {
        FunctionFieldForm::from_gram(self.base, &self.raw)
    }
}

pub fn cusp_trace_form(base: FieldDescriptor, u1: &P, v1: &P, p: &P, v: &P) -> Result<CuspTraceForm, GwError> {
    let f = &base;
    let zero = f.zero();
    if f.is_zero(&u1.eval(f, &zero)) {
        return Err(GwError::UnitConditionViolated("U1(0) = 0"));
    }
    if f.is_zero(&v.eval(f, &zero)) {
        return Err(GwError::UnitConditionViolated("v(0) = 0"));
    }
    let s = UniPoly::x(f);
    let two = f.from_i64(2);
    // c = 2 V1 v - U1 P, d = 2 U1 - s V1 P
    let c = v1.mul(f, v).scale(f, &two).sub(f, &u1.mul(f, p));
    let d = u1.scale(f, &two).sub(f, &s.mul(f, &v1.mul(f, p)));
    let k = RationalFunctionField::new(base);
    let r = |x: P| k.from_poly(x);
    let sc = s.mul(f, &c);
    let vd = v.mul(f, &d);
    let raw = Matrix::from_rows(vec![
        vec![r(sc.clone()), r(s.mul(f, &vd))],
        vec![r(s.mul(f, &vd)), r(s.mul(f, &s).mul(f, &v.mul(f, &c)))],
    ]);
    let reduced = Matrix::from_rows(vec![vec![r(sc.clone()), r(vd.clone())], vec![r(vd.clone()), r(v.mul(f, &c))]]);
    let reduced_det = sc.mul(f, &v.mul(f, &c)).sub(f, &vd.mul(f, &vd));
    Ok(CuspTraceForm { base, raw, reduced, reduced_det })
}
