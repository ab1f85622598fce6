//! Classification of a singular point from low-order Taylor data.

use serde::Serialize;

use crate::field::Field;
use crate::poly::BiPoly;

use super::CurveError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SingularityKind {
    Node,
    Cusp,
    Tacnode,
    TriplePoint,
    Other,
}

/// `p(x0 + a X + b Y, y0 + c X + d Y)` for `p` mapped into `g` by `emb`.
pub fn substitute_affine<E: Clone + std::fmt::Debug + PartialEq, G: Field>(
    g: &G,
    p: &BiPoly<E>,
    emb: impl Fn(&E) -> G::Elem,
    shift: (&G::Elem, &G::Elem),
    m: [[G::Elem; 2]; 2],
) -> BiPoly<G::Elem> {
    let lin = |c0: &G::Elem, a: &G::Elem, b: &G::Elem| BiPoly::from_terms(g, [((0, 0), c0.clone()), ((1, 0), a.clone()), ((0, 1), b.clone())]);
    let xs = lin(shift.0, &m[0][0], &m[0][1]);
    let ys = lin(shift.1, &m[1][0], &m[1][1]);
    let mut acc = BiPoly::zero();
    for ((i, j), c) in p.terms() {
        let term = xs.pow(g, *i).mul(g, &ys.pow(g, *j)).scale(g, &emb(c));
        acc = acc.add(g, &term);
    }
    acc
}

/// Classify the singularity of the affine curve `p = 0` at `(x0, y0)`,
/// a point with coordinates in the field `g`.
pub fn classify_point<E: Clone + std::fmt::Debug + PartialEq, G: Field>(
    g: &G,
    p: &BiPoly<E>,
    emb: impl Fn(&E) -> G::Elem,
    x0: &G::Elem,
    y0: &G::Elem,
) -> Result<SingularityKind, CurveError> {
    let (one, zero) = (g.one(), g.zero());
    let h = substitute_affine(g, p, &emb, (x0, y0), [[one.clone(), zero.clone()], [zero.clone(), one.clone()]]);
    let c = |i: u32, j: u32| h.coeff(g, i, j);
    if !g.is_zero(&c(0, 0)) || !g.is_zero(&c(1, 0)) || !g.is_zero(&c(0, 1)) {
        return Err(CurveError::NonSingularPoint);
    }
    let (a, b, cc) = (c(2, 0), c(1, 1), c(0, 2));
    let all_zero = g.is_zero(&a) && g.is_zero(&b) && g.is_zero(&cc);
    if all_zero {
        // multiplicity >= 3: ordinary triple point iff the cubic cone is reduced
        let cubic = [c(3, 0), c(2, 1), c(1, 2), c(0, 3)];
        if cubic.iter().all(|x| g.is_zero(x)) {
            return Ok(SingularityKind::Other);
        }
        let disc = binary_cubic_discriminant(g, &cubic);
        return Ok(if g.is_zero(&disc) { SingularityKind::Other } else { SingularityKind::TriplePoint });
    }
    let disc2 = g.sub(&g.mul(&b, &b), &g.mul(&g.from_i64(4), &g.mul(&a, &cc)));
    if !g.is_zero(&disc2) {
        return Ok(SingularityKind::Node);
    }
    // Rank one: kernel direction v and a complement w.
    let (v, w) = if !g.is_zero(&a) {
        ([g.neg(&b), g.mul(&g.from_i64(2), &a)], [one.clone(), zero.clone()])
    } else {
        ([one.clone(), zero.clone()], [zero.clone(), one.clone()])
    };
    let k = substitute_affine(g, &h, |e| e.clone(), (&zero, &zero), [[v[0].clone(), w[0].clone()], [v[1].clone(), w[1].clone()]]);
    let lead = k.coeff(g, 0, 2);
    let c3 = k.coeff(g, 3, 0);
    if !g.is_zero(&c3) {
        return Ok(SingularityKind::Cusp);
    }
    let b2 = k.coeff(g, 2, 1);
    let c4 = k.coeff(g, 4, 0);
    // order-4 term of k(X, phi(X)) after eliminating Y
    let q = g.sub(&g.mul(&g.mul(&g.from_i64(4), &lead), &c4), &g.mul(&b2, &b2));
    Ok(if g.is_zero(&q) { SingularityKind::Other } else { SingularityKind::Tacnode })
}

/// Discriminant of `a X^3 + b X^2 Y + c X Y^2 + d Y^3`.
fn binary_cubic_discriminant<G: Field>(g: &G, k: &[G::Elem; 4]) -> G::Elem {
    let [a, b, c, d] = k;
    let t = |n: i64, xs: &[&G::Elem]| xs.iter().fold(g.from_i64(n), |acc, x| g.mul(&acc, x));
    let terms = [
        t(1, &[b, b, c, c]),
        t(-4, &[a, c, c, c]),
        t(-4, &[b, b, b, d]),
        t(-27, &[a, a, d, d]),
        t(18, &[a, b, c, d]),
    ];
    terms.iter().fold(g.zero(), |acc, x| g.add(&acc, x))
}
