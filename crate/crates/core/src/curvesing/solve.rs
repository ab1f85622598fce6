//! Zero-dimensional systems in the affine plane, solved into an étale
//! algebra `K[t]/(g)` with coordinate functions `x(t)`, `y(t)`.
//!
//! The projection `t = x + c y` is eliminated by resultants in `y`; the
//! squarefree gcd of the resultants is refined by dynamic evaluation while
//! `y` is recovered as the common root of the specialized equations.

use crate::etale::{dynamic_eval, AlgebraElement, EtaleAlgebra};
use crate::field::Field;
use crate::poly::{BiPoly, RationalFunctionField, UniPoly};

use super::CurveError;

/// Points of a reduced zero-dimensional scheme.
#[derive(Clone, Debug)]
pub struct ZeroDimSolution<F: Field> {
    pub algebra: EtaleAlgebra<F>,
    pub x: AlgebraElement<F::Elem>,
    pub y: AlgebraElement<F::Elem>,
    /// Shear used for the primitive element `t = x + c y`.
    pub projection: i64,
}

/// Value of a bivariate polynomial at `(x, y)` in an étale algebra.
pub fn eval_bipoly<F: Field>(
    a: &EtaleAlgebra<F>,
    p: &BiPoly<F::Elem>,
    x: &AlgebraElement<F::Elem>,
    y: &AlgebraElement<F::Elem>,
) -> AlgebraElement<F::Elem> {
    let mut acc = a.from_base(&a.base().zero());
    for ((i, j), c) in p.terms() {
        let m = a.mul(&a.pow(x, u64::from(*i)), &a.pow(y, u64::from(*j)));
        acc = a.add(&acc, &a.scale(&m, c));
    }
    acc
}

/// `Res_y(p, q)` as a polynomial in `x`.
pub fn resultant_y<F: Field>(f: &F, p: &BiPoly<F::Elem>, q: &BiPoly<F::Elem>) -> Result<UniPoly<F::Elem>, CurveError> {
    let bound = (p.total_degree() * q.total_degree()) as usize;
    let (pc, qc) = (p.y_coefficients(f), q.y_coefficients(f));
    let (plc, qlc) = (pc.last().unwrap().clone(), qc.last().unwrap().clone());
    let char = f.characteristic();
    if char == 0 || char > 4 * (bound as u64 + 2) {
        let mut xs = Vec::with_capacity(bound + 1);
        let mut ys = Vec::with_capacity(bound + 1);
        let mut k = 0i64;
        while xs.len() <= bound {
            let t = f.from_i64(k);
            k += 1;
            if f.is_zero(&plc.eval(f, &t)) || f.is_zero(&qlc.eval(f, &t)) {
                continue;
            }
            ys.push(p.eval_x(f, &t).resultant(f, &q.eval_x(f, &t))?);
            xs.push(t);
        }
        return Ok(UniPoly::interpolate(f, &xs, &ys)?);
    }
    // Small characteristic: work over K(x) directly.
    let k = RationalFunctionField::new(f.clone());
    let lift = |cs: &[UniPoly<F::Elem>]| UniPoly::new(&k, cs.iter().map(|c| k.from_poly(c.clone())).collect());
    let r = lift(&pc).resultant(&k, &lift(&qc))?;
    Ok(r.num.scale(f, &f.inv(r.den.lc().unwrap()).unwrap()))
}

enum Fiber<E> {
    Empty,
    Point(UniPoly<E>),
    Ambiguous,
}

/// Solve `eqs = 0`, trying shears `c = 0, 1, ..., max_shear - 1`.
///
/// Returns `Ok(None)` for an empty solution set and `PositiveDimensional`
/// when all resultants vanish identically.
pub fn solve_zero_dim<F: Field>(f: &F, eqs: &[BiPoly<F::Elem>], max_shear: usize) -> Result<Option<ZeroDimSolution<F>>, CurveError> {
    let eqs: Vec<BiPoly<F::Elem>> = eqs.iter().filter(|e| !e.is_zero()).cloned().collect();
    if eqs.iter().any(|e| e.total_degree() == 0) {
        return Ok(None);
    }
    if eqs.len() < 2 {
        return Err(CurveError::PositiveDimensional);
    }
    for c in 0..max_shear as i64 {
        let cf = f.from_i64(c);
        if c > 0 && f.characteristic() != 0 && c as u64 >= f.characteristic() {
            break;
        }
        let sheared: Vec<BiPoly<F::Elem>> = eqs.iter().map(|e| e.shear(f, &cf)).collect();
        let mut r: Option<UniPoly<F::Elem>> = None;
        for i in 0..sheared.len() {
            for j in i + 1..sheared.len() {
                let res = resultant_y(f, &sheared[i], &sheared[j])?;
                if res.is_zero() {
                    continue;
                }
                r = Some(match r {
                    None => res.monic(f),
                    Some(acc) => acc.gcd(f, &res),
                });
            }
        }
        let Some(r) = r else {
            return Err(CurveError::PositiveDimensional);
        };
        if r.deg() == 0 {
            return Ok(None);
        }
        let g = r.squarefree_part(f)?;
        let coeff_polys: Vec<Vec<UniPoly<F::Elem>>> = sheared.iter().map(|e| e.y_coefficients(f)).collect();
        let (fibers, _) = dynamic_eval(f, &g, |k| {
            let t = k.generator();
            let mut acc: Option<UniPoly<UniPoly<F::Elem>>> = None;
            for cs in &coeff_polys {
                let spec = UniPoly::new(k, cs.iter().map(|c| c.eval_in(k, |a| k.embed(a), &t)).collect());
                if spec.is_zero() {
                    continue;
                }
                acc = Some(match acc {
                    None => spec.monic(k),
                    Some(a) => a.gcd(k, &spec),
                });
            }
            // the radical of the fiber: non-reduced points are still points
            let acc = acc.map(|h| match h.squarefree_part(k) {
                Ok(r) if r.deg() > 0 => r,
                _ => h,
            });
            match acc {
                None => Fiber::Ambiguous,
                Some(h) if h.deg() == 0 => Fiber::Empty,
                Some(h) if h.deg() == 1 => Fiber::Point(k.neg(&h.coeffs()[0])),
                Some(_) => Fiber::Ambiguous,
            }
        });
        if fibers.iter().any(|(_, fb)| matches!(fb, Fiber::Ambiguous)) {
            continue;
        }
        let (moduli, ys): (Vec<_>, Vec<_>) = fibers
            .into_iter()
            .filter_map(|(m, fb)| match fb {
                Fiber::Point(y) => Some((m, y)),
                _ => None,
            })
            .unzip();
        if moduli.is_empty() {
            return Ok(None);
        }
        let algebra = EtaleAlgebra::from_components(f, moduli)?;
        let y = algebra.element_from_residues(ys);
        let x = algebra.sub(&algebra.generator(), &algebra.scale(&y, &cf));
        for e in &eqs {
            if !algebra.is_zero(&eval_bipoly(&algebra, e, &x, &y)) {
                return Err(CurveError::ResidualCheckFailed);
            }
        }
        return Ok(Some(ZeroDimSolution { algebra, x, y, projection: c }));
    }
    Err(CurveError::NotReduced)
}
