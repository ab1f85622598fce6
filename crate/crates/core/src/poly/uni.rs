//! Dense univariate polynomials over a ring object.

use crate::field::Field;

use super::PolyError;

/// Inputs above this degree are rejected by the squarefree machinery.
pub const DEGREE_CAP: usize = 64;

/// Dense polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> UniPoly<E> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }
}

impl<E: Clone + std::fmt::Debug + PartialEq> UniPoly<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64<F: Field<Elem = E>>(f: &F, coeffs: &[i64]) -> Self {
        Self::new(f, coeffs.iter().map(|&c| f.from_i64(c)).collect())
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Self::new(f, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(f: &F) -> Self {
        Self::constant(f, f.one())
    }

    /// `c * x^k`.
    pub fn monomial<F: Field<Elem = E>>(f: &F, c: E, k: usize) -> Self {
        let mut v = vec![f.zero(); k];
        v.push(c);
        Self::new(f, v)
    }

    pub fn x<F: Field<Elem = E>>(f: &F) -> Self {
        Self::monomial(f, f.one(), 1)
    }

    pub fn map<G: Field>(&self, g: &G, phi: impl Fn(&E) -> G::Elem) -> UniPoly<G::Elem> {
        UniPoly::new(g, self.coeffs.iter().map(phi).collect())
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(f, v)
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        self.add(f, &o.neg(f))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        Self::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some(v) = f.poly_mul(&self.coeffs, &o.coeffs) {
            return Self::new(f, v);
        }
        let mut v = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = f.add(&v[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, v)
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, e: usize) -> Self {
        let mut acc = Self::one(f);
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Multiply by `x^k`.
    pub fn shift<F: Field<Elem = E>>(&self, f: &F, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![f.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    /// Euclidean division; fails when the divisor's leading coefficient is
    /// not invertible.
    pub fn div_rem<F: Field<Elem = E>>(&self, f: &F, d: &Self) -> Result<(Self, Self), PolyError> {
        let dl = d.lc().ok_or(PolyError::ZeroPolynomial)?;
        let inv = f.inv(dl).ok_or(PolyError::NonInvertibleLeadingCoefficient)?;
        let dd = d.deg();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dd], &inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] = f.sub(&r[k + j], &f.mul(&c, dj));
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(f, q), Self::new(f, r)))
    }

    pub fn rem<F: Field<Elem = E>>(&self, f: &F, d: &Self) -> Result<Self, PolyError> {
        if !self.is_zero() && !d.is_zero() {
            if let Some(r) = f.poly_rem(&self.coeffs, &d.coeffs) {
                return Ok(Self::new(f, r));
            }
        }
        Ok(self.div_rem(f, d)?.1)
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`, no inversions.
    pub fn pseudo_rem<F: Field<Elem = E>>(&self, f: &F, d: &Self) -> Result<Self, PolyError> {
        let dl = d.lc().ok_or(PolyError::ZeroPolynomial)?.clone();
        let dd = d.deg();
        if self.coeffs.len() <= dd {
            return Ok(self.clone());
        }
        let mut r = self.coeffs.clone();
        let steps = r.len() - dd;
        for k in (0..steps).rev() {
            let c = r[k + dd].clone();
            for x in r.iter_mut().take(k + dd + 1) {
                *x = f.mul(x, &dl);
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] = f.sub(&r[k + j], &f.mul(&c, dj));
            }
        }
        r.truncate(dd);
        Ok(Self::new(f, r))
    }

    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(l) => match f.inv(l) {
                Some(i) => self.scale(f, &i),
                None => self.clone(),
            },
        }
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        if let Some(g) = super::modgcd::modular_gcd(f, self, o) {
            return g;
        }
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = match a.rem(f, &b) {
                Ok(r) => r,
                Err(_) => return Self::zero(),
            };
            a = b;
            // Monic remainders keep coefficient growth over ℚ in check.
            b = r.monic(f);
        }
        a.monic(f)
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = match r0.div_rem(f, &r1) {
                Ok(x) => x,
                Err(_) => break,
            };
            let mut s2 = s0.sub(f, &q.mul(f, &s1));
            let mut t2 = t0.sub(f, &q.mul(f, &t1));
            let mut r = r;
            if let Some(li) = r.lc().and_then(|l| f.inv(l)) {
                r = r.scale(f, &li);
                s2 = s2.scale(f, &li);
                t2 = t2.scale(f, &li);
            }
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.lc().and_then(|l| f.inv(l)) {
            Some(i) => (r0.scale(f, &i), s0.scale(f, &i), t0.scale(f, &i)),
            None => (r0, s0, t0),
        }
    }

    pub fn derivative<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Self::new(f, v)
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, x: &E) -> E {
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Evaluate at an element of another field through a coefficient map.
    pub fn eval_in<G: Field>(&self, g: &G, emb: impl Fn(&E) -> G::Elem, x: &G::Elem) -> G::Elem {
        let mut acc = g.zero();
        for c in self.coeffs.iter().rev() {
            acc = g.add(&g.mul(&acc, x), &emb(c));
        }
        acc
    }

    /// `self(h(x))`.
    pub fn compose<F: Field<Elem = E>>(&self, f: &F, h: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(f, h).add(f, &Self::constant(f, c.clone()));
        }
        acc
    }

    /// `f / gcd(f, f')`, monic. Exact over fields of characteristic zero or
    /// larger than the degree.
    pub fn squarefree_part<F: Field<Elem = E>>(&self, f: &F) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.deg() > DEGREE_CAP {
            return Err(PolyError::DegreeCap(self.deg()));
        }
        let g = self.gcd(f, &self.derivative(f));
        Ok(self.div_rem(f, &g)?.0.monic(f))
    }

    pub fn is_squarefree<F: Field<Elem = E>>(&self, f: &F) -> Result<bool, PolyError> {
        Ok(self.squarefree_part(f)?.deg() == self.deg())
    }

    /// Resultant by the subresultant pseudo-remainder sequence.
    pub fn resultant<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Result<E, PolyError> {
        if self.is_zero() || o.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut s = f.one();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
            if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
                s = f.neg(&s);
            }
        }
        if b.deg() == 0 {
            return Ok(f.mul(&s, &f.pow(b.lc().unwrap(), a.deg() as u64)));
        }
        let mut g = f.one();
        let mut h = f.one();
        loop {
            let delta = a.deg() - b.deg();
            if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
                s = f.neg(&s);
            }
            let r = a.pseudo_rem(f, &b)?;
            a = b;
            let denom = f.mul(&g, &f.pow(&h, delta as u64));
            let dinv = f.inv(&denom).ok_or(PolyError::NonInvertibleLeadingCoefficient)?;
            b = r.scale(f, &dinv);
            g = a.lc().unwrap().clone();
            // h <- g^delta / h^(delta - 1)
            let num = f.pow(&g, delta as u64);
            h = if delta == 0 {
                h
            } else {
                let hd = f.pow(&h, (delta - 1) as u64);
                f.div(&num, &hd).ok_or(PolyError::NonInvertibleLeadingCoefficient)?
            };
            if b.is_zero() {
                return Ok(f.zero());
            }
            if b.deg() == 0 {
                let da = a.deg() as u64;
                let lb = f.pow(b.lc().unwrap(), da);
                let hp = if da == 0 {
                    f.one()
                } else {
                    f.inv(&f.pow(&h, da - 1)).ok_or(PolyError::NonInvertibleLeadingCoefficient)?
                };
                return Ok(f.mul(&s, &f.mul(&hp, &lb)));
            }
        }
    }

    /// `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
    pub fn discriminant<F: Field<Elem = E>>(&self, f: &F) -> Result<E, PolyError> {
        let n = self.degree().ok_or(PolyError::ZeroPolynomial)?;
        if n == 0 {
            return Err(PolyError::ZeroPolynomial);
        }
        let lc = self.lc().unwrap();
        let inv = f.inv(lc).ok_or(PolyError::NonInvertibleLeadingCoefficient)?;
        let d = self.derivative(f);
        let r = if d.is_zero() { f.zero() } else { self.resultant(f, &d)? };
        let r = f.mul(&r, &inv);
        Ok(if (n * (n - 1) / 2) % 2 == 1 { f.neg(&r) } else { r })
    }

    /// Newton interpolation through `(xs[i], ys[i])` with distinct `xs`.
    pub fn interpolate<F: Field<Elem = E>>(f: &F, xs: &[E], ys: &[E]) -> Result<Self, PolyError> {
        let n = xs.len();
        let mut dd: Vec<E> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = f.sub(&dd[i], &dd[i - 1]);
                let den = f.sub(&xs[i], &xs[i - j]);
                dd[i] = f.div(&num, &den).ok_or(PolyError::RepeatedNode)?;
            }
        }
        let mut acc = Self::zero();
        for i in (0..n).rev() {
            let lin = Self::new(f, vec![f.neg(&xs[i]), f.one()]);
            acc = acc.mul(f, &lin).add(f, &Self::constant(f, dd[i].clone()));
        }
        Ok(acc)
    }

    /// `self * o mod m`.
    pub fn mul_mod<F: Field<Elem = E>>(&self, f: &F, o: &Self, m: &Self) -> Self {
        self.mul(f, o).rem(f, m).unwrap_or_else(|_| Self::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::scalars::FieldDescriptor;
    use proptest::prelude::*;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    fn p(c: &[i64]) -> UniPoly<crate::scalars::FieldScalar> {
        UniPoly::from_i64(&Q, c)
    }

    /// Sylvester determinant computed by plain elimination, independent of the PRS.
    fn sylvester_resultant(a: &UniPoly<crate::scalars::FieldScalar>, b: &UniPoly<crate::scalars::FieldScalar>) -> crate::scalars::FieldScalar {
        let (m, n) = (a.deg(), b.deg());
        let size = m + n;
        let mut rows = Vec::new();
        for i in 0..n {
            let mut r = vec![Q.zero(); size];
            for (j, c) in a.coeffs().iter().rev().enumerate() {
                r[i + j] = c.clone();
            }
            rows.push(r);
        }
        for i in 0..m {
            let mut r = vec![Q.zero(); size];
            for (j, c) in b.coeffs().iter().rev().enumerate() {
                r[i + j] = c.clone();
            }
            rows.push(r);
        }
        Matrix::from_rows(rows).det(&Q)
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(p(&[-1, 0, 1]).resultant(&Q, &p(&[-2, 1])).unwrap(), Q.from_i64(3));
        assert_eq!(p(&[1, 2, 3]).resultant(&Q, &p(&[5])).unwrap(), Q.from_i64(25));
        assert_eq!(p(&[-2, 0, 1]).resultant(&Q, &p(&[-2, 0, 1])).unwrap(), Q.zero());
        assert_eq!(p(&[1, 1]).resultant(&Q, &UniPoly::zero()), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn discriminant_examples() {
        // x^2 + 3x + 1 -> 9 - 4
        assert_eq!(p(&[1, 3, 1]).discriminant(&Q).unwrap(), Q.from_i64(5));
        // x^3 + 2x + 5 -> -4*8 - 27*25
        assert_eq!(p(&[5, 2, 0, 1]).discriminant(&Q).unwrap(), Q.from_i64(-32 - 675));
        assert_eq!(p(&[1, -2, 1]).discriminant(&Q).unwrap(), Q.zero());
    }

    #[test]
    fn squarefree_examples() {
        let f = p(&[-1, 1]).pow(&Q, 2).mul(&Q, &p(&[2, 1]));
        assert_eq!(f.squarefree_part(&Q).unwrap(), p(&[-1, 1]).mul(&Q, &p(&[2, 1])));
        assert_eq!(p(&[-2, 0, 1]).squarefree_part(&Q).unwrap(), p(&[-2, 0, 1]));
        let big = UniPoly::monomial(&Q, Q.one(), 65);
        assert_eq!(big.squarefree_part(&Q), Err(PolyError::DegreeCap(65)));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p(&[3, -1, 0, 2]);
        let xs: Vec<_> = (0..4).map(|i| Q.from_i64(i)).collect();
        let ys: Vec<_> = xs.iter().map(|x| f.eval(&Q, x)).collect();
        assert_eq!(UniPoly::interpolate(&Q, &xs, &ys).unwrap(), f);
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-9i64..10, 1..=max_deg + 1)
    }

    proptest! {
        #[test]
        fn resultant_matches_sylvester(a in arb_poly(5), b in arb_poly(5)) {
            let (a, b) = (p(&a), p(&b));
            prop_assume!(!a.is_zero() && !b.is_zero() && a.deg() + b.deg() > 0);
            prop_assert_eq!(a.resultant(&Q, &b).unwrap(), sylvester_resultant(&a, &b));
        }

        #[test]
        fn resultant_antisymmetry(a in arb_poly(5), b in arb_poly(5)) {
            let (a, b) = (p(&a), p(&b));
            prop_assume!(!a.is_zero() && !b.is_zero());
            let sign = if a.deg() * b.deg() % 2 == 1 { -1 } else { 1 };
            let lhs = a.resultant(&Q, &b).unwrap();
            let rhs = Q.mul(&Q.from_i64(sign), &b.resultant(&Q, &a).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn resultant_multiplicative(a in arb_poly(4), b in arb_poly(3), c in arb_poly(3)) {
            let (a, b, c) = (p(&a), p(&b), p(&c));
            prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
            let lhs = a.resultant(&Q, &b.mul(&Q, &c)).unwrap();
            let rhs = Q.mul(&a.resultant(&Q, &b).unwrap(), &a.resultant(&Q, &c).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn discriminant_vanishes_iff_not_squarefree(a in arb_poly(3), r in -5i64..5, planted in any::<bool>()) {
            let mut f = p(&a);
            prop_assume!(f.deg() >= 1);
            if planted {
                f = f.mul(&Q, &p(&[-r, 1]).pow(&Q, 2));
            }
            let disc_zero = Q.is_zero(&f.discriminant(&Q).unwrap());
            let sqf = f.is_squarefree(&Q).unwrap();
            prop_assert_eq!(disc_zero, !sqf);
        }

        #[test]
        fn resultant_over_fp_matches_sylvester_image(a in arb_poly(4), b in arb_poly(4)) {
            let f = FieldDescriptor::prime_field(101).unwrap();
            let (aq, bq) = (p(&a), p(&b));
            let (af, bf) = (UniPoly::from_i64(&f, &a), UniPoly::from_i64(&f, &b));
            prop_assume!(!aq.is_zero() && !bq.is_zero() && af.deg() == aq.deg() && bf.deg() == bq.deg());
            let rq = aq.resultant(&Q, &bq).unwrap();
            let rf = af.resultant(&f, &bf).unwrap();
            let image = f.from_rational(rq.as_rational().unwrap()).unwrap();
            prop_assert_eq!(rf, image);
        }
    }
}
