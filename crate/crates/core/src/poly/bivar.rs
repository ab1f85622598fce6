//! Sparse bivariate polynomials in `x`, `y`.

use std::collections::BTreeMap;

use crate::field::Field;

use super::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly<E> {
    /// `(i, j) -> c` for the monomial `c x^i y^j`.
    terms: BTreeMap<(u32, u32), E>,
}

impl<E: Clone + std::fmt::Debug + PartialEq> BiPoly<E> {
    pub fn from_terms<F: Field<Elem = E>>(f: &F, terms: impl IntoIterator<Item = ((u32, u32), E)>) -> Self {
        let mut map: BTreeMap<(u32, u32), E> = BTreeMap::new();
        for (e, c) in terms {
            let entry = map.entry(e).or_insert_with(|| f.zero());
            *entry = f.add(entry, &c);
        }
        map.retain(|_, c| !f.is_zero(c));
        BiPoly { terms: map }
    }

    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn x<F: Field<Elem = E>>(f: &F) -> Self {
        Self::from_terms(f, [((1, 0), f.one())])
    }

    pub fn y<F: Field<Elem = E>>(f: &F) -> Self {
        Self::from_terms(f, [((0, 1), f.one())])
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Self::from_terms(f, [((0, 0), c)])
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|(_, j)| *j).max().unwrap_or(0)
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, i: u32, j: u32) -> E {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        Self::from_terms(f, self.terms.iter().chain(o.terms.iter()).map(|(e, c)| (*e, c.clone())))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        Self::from_terms(f, self.terms.iter().map(|(e, a)| (*e, f.mul(a, c))))
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        self.add(f, &o.scale(f, &f.from_i64(-1)))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let mut out = Vec::new();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &o.terms {
                out.push(((i1 + i2, j1 + j2), f.mul(c1, c2)));
            }
        }
        Self::from_terms(f, out)
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, k: u32) -> Self {
        let mut acc = Self::constant(f, f.one());
        for _ in 0..k {
            acc = acc.mul(f, self);
        }
        acc
    }

    pub fn partial_x<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Self::from_terms(
            f,
            self.terms.iter().filter(|((i, _), _)| *i > 0).map(|((i, j), c)| ((i - 1, *j), f.mul(c, &f.from_i64(*i as i64)))),
        )
    }

    pub fn partial_y<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Self::from_terms(
            f,
            self.terms.iter().filter(|((_, j), _)| *j > 0).map(|((i, j), c)| ((*i, j - 1), f.mul(c, &f.from_i64(*j as i64)))),
        )
    }

    pub fn map<G: Field>(&self, g: &G, phi: impl Fn(&E) -> G::Elem) -> BiPoly<G::Elem> {
        BiPoly::from_terms(g, self.terms.iter().map(|(e, c)| (*e, phi(c))))
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, x: &E, y: &E) -> E {
        self.eval_in(f, |c| c.clone(), x, y)
    }

    /// Evaluate at a point of an extension through a coefficient map.
    pub fn eval_in<G: Field>(&self, g: &G, emb: impl Fn(&E) -> G::Elem, x: &G::Elem, y: &G::Elem) -> G::Elem {
        let dx = self.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
        let dy = self.deg_y() as usize;
        let mut xp = vec![g.one()];
        for k in 1..=dx {
            xp.push(g.mul(&xp[k - 1], x));
        }
        let mut yp = vec![g.one()];
        for k in 1..=dy {
            yp.push(g.mul(&yp[k - 1], y));
        }
        let mut acc = g.zero();
        for ((i, j), c) in &self.terms {
            let t = g.mul(&emb(c), &g.mul(&xp[*i as usize], &yp[*j as usize]));
            acc = g.add(&acc, &t);
        }
        acc
    }

    /// Substitute `x -> t - c*y`; the result is a polynomial in `(t, y)`.
    pub fn shear<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        let t_minus = BiPoly::x(f).sub(f, &BiPoly::y(f).scale(f, c));
        let mut acc = Self::zero();
        for ((i, j), coef) in &self.terms {
            let term = t_minus.pow(f, *i).mul(f, &BiPoly::from_terms(f, [((0, *j), coef.clone())]));
            acc = acc.add(f, &term);
        }
        acc
    }

    /// Coefficients of `y^j` as polynomials in `x`, `j = 0..=deg_y`.
    pub fn y_coefficients<F: Field<Elem = E>>(&self, f: &F) -> Vec<UniPoly<E>> {
        let dy = self.deg_y() as usize;
        let dx = self.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
        let mut out = vec![vec![f.zero(); dx + 1]; dy + 1];
        for ((i, j), c) in &self.terms {
            out[*j as usize][*i as usize] = c.clone();
        }
        out.into_iter().map(|v| UniPoly::new(f, v)).collect()
    }

    /// Specialize `x = a`, giving a polynomial in `y`.
    pub fn eval_x<F: Field<Elem = E>>(&self, f: &F, a: &E) -> UniPoly<E> {
        let coeffs = self.y_coefficients(f).iter().map(|p| p.eval(f, a)).collect();
        UniPoly::new(f, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldDescriptor;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    #[test]
    fn shear_then_evaluate() {
        // f = x^2 y - 3x + 1
        let f = BiPoly::from_terms(&Q, [((2, 1), Q.one()), ((1, 0), Q.from_i64(-3)), ((0, 0), Q.one())]);
        let c = Q.from_i64(2);
        let g = f.shear(&Q, &c);
        let (x, y) = (Q.from_i64(5), Q.from_i64(-2));
        let t = Q.add(&x, &Q.mul(&c, &y));
        assert_eq!(g.eval(&Q, &t, &y), f.eval(&Q, &x, &y));
    }

    #[test]
    fn partials() {
        let f = BiPoly::from_terms(&Q, [((3, 2), Q.one())]);
        assert_eq!(f.partial_x(&Q), BiPoly::from_terms(&Q, [((2, 2), Q.from_i64(3))]));
        assert_eq!(f.partial_y(&Q), BiPoly::from_terms(&Q, [((3, 1), Q.from_i64(2))]));
    }
}
