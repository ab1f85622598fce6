//! Finite extensions 𝔽_p[t]/(q) with q irreducible.

use num_bigint::BigUint;
use num_traits::One;

use super::symbols::pow_mod;
use super::{FieldDescriptor, FieldScalar, ScalarError};
use crate::field::{Field, SquareTest};

/// Element of 𝔽_p[t]/(q): coefficients `c_0 + c_1 t + ...`, length `deg q`.
pub type ExtElem = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteExtension {
    p: u64,
    /// Monic modulus, low degree first, leading 1 included.
    modulus: Vec<u64>,
}

fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.iter().map(|c| c % p).collect();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let inv_lc = pow_mod(*m.last().unwrap(), p - 2, p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (*r.last().unwrap() as u128 * inv_lc as u128 % p as u128) as u64;
        for (i, mi) in m.iter().enumerate() {
            let sub = (c as u128 * *mi as u128 % p as u128) as u64;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + *x as u128 * *y as u128) % p as u128) as u64;
        }
    }
    poly_rem(&out, m, p)
}

fn poly_powmod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let b = poly_rem(base, m, p);
    for i in (0..e.bits()).rev() {
        acc = poly_mulmod(&acc, &acc, m, p);
        if e.bit(i) {
            acc = poly_mulmod(&acc, &b, m, p);
        }
    }
    acc
}

/// True iff `q` (monic, low degree first) is irreducible over 𝔽_p.
/// Rabin's test: `t^(p^n) = t mod q` and `gcd(t^(p^(n/r)) - t, q) = 1`.
pub fn is_irreducible_mod_p(q: &[u64], p: u64) -> bool {
    let n = q.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let t = vec![0u64, 1];
    let frob = |k: usize| -> Vec<u64> {
        let e = BigUint::from(p).pow(k as u32);
        poly_powmod(&t, &e, q, p)
    };
    let mut full = frob(n);
    poly_trim(&mut full);
    if poly_rem(&t, q, p) != full {
        return false;
    }
    let mut m = n;
    let mut prime_divs = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            prime_divs.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        prime_divs.push(m);
    }
    for r in prime_divs {
        let mut h = frob(n / r);
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        poly_trim(&mut h);
        let g = poly_gcd(&h, q, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FiniteExtension {
    /// `modulus` is monic, given low degree first including the leading 1.
    pub fn new(base: FieldDescriptor, modulus: Vec<u64>) -> Result<Self, ScalarError> {
        let p = base.modulus().ok_or(ScalarError::BadPrime(0))?;
        let modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        if modulus.last() != Some(&1) || !is_irreducible_mod_p(&modulus, p) {
            return Err(ScalarError::Parse(format!("reducible or non-monic modulus {modulus:?}")));
        }
        Ok(FiniteExtension { p, modulus })
    }

    /// 𝔽_{p^2} as 𝔽_p[t]/(t^2 - n0) with n0 the least nonresidue.
    pub fn quadratic(base: FieldDescriptor) -> Self {
        let n0 = base.least_nonresidue().expect("prime field");
        let p = base.modulus().unwrap();
        FiniteExtension { p, modulus: vec![(p - n0) % p, 0, 1] }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Image of a base scalar.
    pub fn embed(&self, a: &FieldScalar) -> ExtElem {
        match a {
            FieldScalar::Modular { value, .. } => self.normalize(vec![*value]),
            FieldScalar::Rational(_) => panic!("rational scalar in a finite field"),
        }
    }

    /// The generator `t`.
    pub fn generator(&self) -> ExtElem {
        self.normalize(vec![0, 1])
    }

    fn normalize(&self, a: Vec<u64>) -> ExtElem {
        let mut r = poly_rem(&a, &self.modulus, self.p);
        r.resize(self.degree(), 0);
        r
    }

    fn order_minus_one(&self) -> BigUint {
        BigUint::from(self.p).pow(self.degree() as u32) - BigUint::one()
    }
}

impl Field for FiniteExtension {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        vec![0; self.degree()]
    }

    fn one(&self) -> ExtElem {
        self.normalize(vec![1])
    }

    fn from_i64(&self, n: i64) -> ExtElem {
        self.normalize(vec![(n as i128).rem_euclid(self.p as i128) as u64])
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter().zip(b).map(|(x, y)| (x + self.p - y) % self.p).collect()
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let mut r = poly_mulmod(a, b, &self.modulus, self.p);
        r.resize(self.degree(), 0);
        r
    }

    fn neg(&self, a: &ExtElem) -> ExtElem {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        // a^(q-2) in the multiplicative group of order q-1.
        let e = self.order_minus_one() - BigUint::one();
        let mut r = poly_powmod(a, &e, &self.modulus, self.p);
        r.resize(self.degree(), 0);
        Some(r)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }
}

impl SquareTest for FiniteExtension {
    fn is_square(&self, a: &ExtElem) -> bool {
        if self.is_zero(a) {
            return true;
        }
        let e = self.order_minus_one() >> 1;
        let mut r = poly_powmod(a, &e, &self.modulus, self.p);
        poly_trim(&mut r);
        r == vec![1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility() {
        assert!(is_irreducible_mod_p(&[1, 0, 1], 7));
        assert!(!is_irreducible_mod_p(&[1, 0, 1], 5));
        assert!(is_irreducible_mod_p(&[5, 0, 0, 1], 7) == (1..7).all(|x: u64| (x * x * x + 5) % 7 != 0));
    }

    #[test]
    fn base_scalars_become_squares_in_quadratic_extension() {
        let f7 = FieldDescriptor::prime_field(7).unwrap();
        let e = FiniteExtension::quadratic(f7);
        for a in 1..7 {
            assert!(e.is_square(&e.embed(&f7.from_i64(a))));
        }
        let t = e.generator();
        assert!(!e.is_square(&t) || !e.is_square(&e.add(&t, &e.one())));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = FieldDescriptor::prime_field(101).unwrap();
        let e = FiniteExtension::quadratic(f);
        let a = vec![17, 33];
        let ai = e.inv(&a).unwrap();
        assert_eq!(e.mul(&a, &ai), e.one());
    }

    #[test]
    fn exactly_half_the_units_are_squares() {
        let f = FieldDescriptor::prime_field(5).unwrap();
        let e = FiniteExtension::quadratic(f);
        let mut squares = 0;
        for a in 0..5 {
            for b in 0..5 {
                if (a, b) != (0, 0) && e.is_square(&vec![a, b]) {
                    squares += 1;
                }
            }
        }
        assert_eq!(squares, 12);
    }
}
