//! Homogeneous ternary forms in X0, X1, X2.

use std::collections::BTreeMap;

use crate::field::Field;
use crate::linalg::Matrix;

use super::{BiPoly, PolyError};

/// Sparse homogeneous form; keys are exponent triples summing to `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryForm<E> {
    degree: u32,
    terms: BTreeMap<[u32; 3], E>,
}

impl<E: Clone + std::fmt::Debug + PartialEq> TernaryForm<E> {
    /// Validating constructor: homogeneous and not identically zero.
    pub fn new<F: Field<Elem = E>>(f: &F, degree: u32, terms: impl IntoIterator<Item = ([u32; 3], E)>) -> Result<Self, PolyError> {
        let form = Self::collect(f, degree, terms)?;
        if form.terms.is_empty() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(form)
    }

    fn collect<F: Field<Elem = E>>(f: &F, degree: u32, terms: impl IntoIterator<Item = ([u32; 3], E)>) -> Result<Self, PolyError> {
        let mut map: BTreeMap<[u32; 3], E> = BTreeMap::new();
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(PolyError::Inhomogeneous);
            }
            let entry = map.entry(e).or_insert_with(|| f.zero());
            *entry = f.add(entry, &c);
        }
        map.retain(|_, c| !f.is_zero(c));
        Ok(TernaryForm { degree, terms: map })
    }

    fn raw<F: Field<Elem = E>>(f: &F, degree: u32, terms: impl IntoIterator<Item = ([u32; 3], E)>) -> Self {
        Self::collect(f, degree, terms).expect("homogeneous by construction")
    }

    /// The form `X_i`.
    pub fn variable<F: Field<Elem = E>>(f: &F, i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::raw(f, 1, [(e, f.one())])
    }

    /// Linear form `a X0 + b X1 + c X2`.
    pub fn linear<F: Field<Elem = E>>(f: &F, coeffs: [E; 3]) -> Self {
        let [a, b, c] = coeffs;
        Self::raw(f, 1, [([1, 0, 0], a), ([0, 1, 0], b), ([0, 0, 1], c)])
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Self::raw(f, 0, [([0, 0, 0], c)])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<[u32; 3], E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, e: [u32; 3]) -> E {
        self.terms.get(&e).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, o.degree, "adding forms of different degree");
        Self::raw(f, self.degree, self.terms.iter().chain(o.terms.iter()).map(|(e, c)| (*e, c.clone())))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        Self::raw(f, self.degree, self.terms.iter().map(|(e, a)| (*e, f.mul(a, c))))
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        self.add(f, &o.scale(f, &f.from_i64(-1)))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let mut terms = Vec::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                terms.push(([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], f.mul(c1, c2)));
            }
        }
        Self::raw(f, self.degree + o.degree, terms)
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, k: u32) -> Self {
        let mut acc = Self::constant(f, f.one());
        for _ in 0..k {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Partial derivative in `X_i`; may be the zero form.
    pub fn partial<F: Field<Elem = E>>(&self, f: &F, i: usize) -> Self {
        let deg = self.degree.saturating_sub(1);
        Self::raw(
            f,
            deg,
            self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
                let mut e2 = *e;
                e2[i] -= 1;
                (e2, f.mul(c, &f.from_i64(e[i] as i64)))
            }),
        )
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, p: &[E; 3]) -> E {
        self.eval_in(f, |c| c.clone(), p)
    }

    pub fn eval_in<G: Field>(&self, g: &G, emb: impl Fn(&E) -> G::Elem, p: &[G::Elem; 3]) -> G::Elem {
        let mut acc = g.zero();
        for (e, c) in &self.terms {
            let mut t = emb(c);
            for k in 0..3 {
                if e[k] > 0 {
                    t = g.mul(&t, &g.pow(&p[k], e[k] as u64));
                }
            }
            acc = g.add(&acc, &t);
        }
        acc
    }

    pub fn map<G: Field>(&self, g: &G, phi: impl Fn(&E) -> G::Elem) -> TernaryForm<G::Elem> {
        TernaryForm::raw(g, self.degree, self.terms.iter().map(|(e, c)| (*e, phi(c))))
    }

    /// `F(M X)`: substitute `X_i -> Σ_j M_ij X_j`. Composes as
    /// `(F∘M)∘N = F∘(MN)`.
    pub fn coordinate_change<F: Field<Elem = E>>(&self, f: &F, m: &Matrix<E>) -> Result<Self, PolyError> {
        if m.nrows() != 3 || m.ncols() != 3 || f.is_zero(&m.det(f)) {
            return Err(PolyError::SingularMatrix);
        }
        let lin: Vec<Self> = (0..3).map(|i| Self::linear(f, [m.get(i, 0).clone(), m.get(i, 1).clone(), m.get(i, 2).clone()])).collect();
        let mut pows: Vec<Vec<Self>> = lin
            .iter()
            .map(|l| {
                let mut v = vec![Self::constant(f, f.one())];
                for k in 1..=self.degree as usize {
                    let next = v[k - 1].mul(f, l);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Self::raw(f, self.degree, std::iter::empty());
        for (e, c) in &self.terms {
            let t = pows[0][e[0] as usize]
                .mul(f, &pows[1][e[1] as usize])
                .mul(f, &pows[2][e[2] as usize])
                .scale(f, c);
            acc = acc.add(f, &t);
        }
        pows.clear();
        Ok(acc)
    }

    /// Affine polynomial in the chart `X_chart = 1`; the remaining two
    /// coordinates, in increasing index order, become `x` and `y`.
    pub fn dehomogenize<F: Field<Elem = E>>(&self, f: &F, chart: usize) -> BiPoly<E> {
        let idx: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
        BiPoly::from_terms(f, self.terms.iter().map(|(e, c)| ((e[idx[0]], e[idx[1]]), c.clone())))
    }

    /// Homogenize an affine polynomial of total degree at most `degree` with
    /// `x = X0`, `y = X1`, `z = X2`.
    pub fn homogenize<F: Field<Elem = E>>(f: &F, p: &BiPoly<E>, degree: u32) -> Result<Self, PolyError> {
        if p.total_degree() > degree {
            return Err(PolyError::Inhomogeneous);
        }
        Self::new(f, degree, p.terms().iter().map(|(&(i, j), c)| ([i, j, degree - i - j], c.clone())))
    }
}

impl<E: std::fmt::Display> std::fmt::Display for TernaryForm<E> {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut s = format!("({c})");
                for (k, &ek) in e.iter().enumerate() {
                    if ek > 0 {
                        s.push_str(&format!("*X{k}^{ek}"));
                    }
                }
                s
            })
            .collect();
        write!(out, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{FieldDescriptor, FieldScalar};
    use proptest::prelude::*;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    fn form(d: u32, t: &[([u32; 3], i64)]) -> TernaryForm<FieldScalar> {
        TernaryForm::new(&Q, d, t.iter().map(|(e, c)| (*e, Q.from_i64(*c)))).unwrap()
    }

    fn mat(r: [[i64; 3]; 3]) -> Matrix<FieldScalar> {
        Matrix::from_rows(r.iter().map(|row| row.iter().map(|&x| Q.from_i64(x)).collect()).collect())
    }

    #[test]
    fn coordinate_change_examples() {
        let xyz = form(3, &[([1, 1, 1], 1)]);
        assert_eq!(xyz.coordinate_change(&Q, &Matrix::identity(&Q, 3)).unwrap(), xyz);
        let swap = mat([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        assert_eq!(form(2, &[([2, 0, 0], 1)]).coordinate_change(&Q, &swap).unwrap(), form(2, &[([0, 2, 0], 1)]));
        let cusp = form(3, &[([0, 2, 1], 1), ([3, 0, 0], -1)]);
        assert_eq!(cusp.coordinate_change(&Q, &swap).unwrap(), form(3, &[([2, 0, 1], 1), ([0, 3, 0], -1)]));
        assert_eq!(cusp.coordinate_change(&Q, &mat([[1, 1, 0], [1, 1, 0], [0, 0, 1]])), Err(PolyError::SingularMatrix));
    }

    #[test]
    fn rejects_inhomogeneous_and_zero() {
        assert_eq!(TernaryForm::new(&Q, 2, [([1, 0, 0], Q.one())]), Err(PolyError::Inhomogeneous));
        assert_eq!(TernaryForm::new(&Q, 2, [([1, 1, 0], Q.zero())]), Err(PolyError::ZeroPolynomial));
    }

    proptest! {
        #[test]
        fn coordinate_change_composes(
            c in prop::collection::vec(-3i64..4, 10),
            a in prop::array::uniform9(-2i64..3),
            b in prop::array::uniform9(-2i64..3),
        ) {
            let m = mat([[a[0], a[1], a[2]], [a[3], a[4], a[5]], [a[6], a[7], a[8]]]);
            let n = mat([[b[0], b[1], b[2]], [b[3], b[4], b[5]], [b[6], b[7], b[8]]]);
            prop_assume!(!m.det(&Q).is_zero() && !n.det(&Q).is_zero());
            let exps: Vec<[u32; 3]> = (0..=3u32).flat_map(|i| (0..=3 - i).map(move |j| [i, j, 3 - i - j])).collect();
            let terms: Vec<_> = exps.into_iter().zip(c.iter().map(|&x| Q.from_i64(x))).collect();
            let Ok(f) = TernaryForm::new(&Q, 3, terms) else { return Ok(()); };
            let lhs = f.coordinate_change(&Q, &m).unwrap().coordinate_change(&Q, &n).unwrap();
            let rhs = f.coordinate_change(&Q, &m.mul(&Q, &n)).unwrap();
            prop_assert_eq!(lhs.degree(), 3);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
