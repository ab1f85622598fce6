//! Exact scalars over ℚ and 𝔽_p (p > 3), square classes and local symbols.

pub mod extension;
pub mod factor;
mod qpoly;
pub mod symbols;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, SquareTest};

pub use extension::{ExtElem, FiniteExtension};
pub use symbols::{hilbert_symbol, jacobi, legendre_symbol, Place};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("square class of zero is undefined")]
    ZeroInput,
    #[error("{0} is not a prime larger than 3")]
    BadPrime(u64),
    #[error("cannot parse scalar literal {0:?}")]
    Parse(String),
    #[error("literal modulus {found} does not match base field modulus {expected}")]
    ModulusMismatch { expected: u64, found: u64 },
    #[error("denominator vanishes in the base field")]
    ZeroDenominator,
}

/// The base field: ℚ or 𝔽_p with p prime, p > 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u64),
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    factor::is_probable_prime(&BigUint::from(n))
}

impl FieldDescriptor {
    pub fn prime_field(p: u64) -> Result<Self, ScalarError> {
        if p <= 3 || !is_prime_u64(p) || p > (1u64 << 62) {
            return Err(ScalarError::BadPrime(p));
        }
        Ok(FieldDescriptor::PrimeField(p))
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, FieldDescriptor::Rationals)
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::PrimeField(p) => Some(*p),
        }
    }

    pub fn rational(&self, num: i64, den: i64) -> FieldScalar {
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        self.div(&n, &d).expect("nonzero denominator")
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldScalar {
        match self {
            FieldDescriptor::Rationals => FieldScalar::Rational(BigRational::from_integer(n.clone())),
            FieldDescriptor::PrimeField(p) => {
                let r = n.mod_floor(&BigInt::from(*p)).to_u64().unwrap();
                FieldScalar::Modular { value: r, modulus: *p }
            }
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<FieldScalar, ScalarError> {
        match self {
            FieldDescriptor::Rationals => Ok(FieldScalar::Rational(q.clone())),
            FieldDescriptor::PrimeField(_) => {
                let n = self.from_bigint(q.numer());
                let d = self.from_bigint(q.denom());
                self.div(&n, &d).ok_or(ScalarError::ZeroDenominator)
            }
        }
    }

    /// Parse `"num"`, `"num/den"` or `"n mod p"` into this field.
    pub fn parse_scalar(&self, s: &str) -> Result<FieldScalar, ScalarError> {
        let lit: FieldScalar = s.parse()?;
        match (self, lit) {
            (_, FieldScalar::Rational(q)) => self.from_rational(&q),
            (FieldDescriptor::PrimeField(p), FieldScalar::Modular { value, modulus }) => {
                if *p == modulus {
                    Ok(FieldScalar::Modular { value, modulus })
                } else {
                    Err(ScalarError::ModulusMismatch { expected: *p, found: modulus })
                }
            }
            (FieldDescriptor::Rationals, FieldScalar::Modular { .. }) => {
                Err(ScalarError::Parse(s.to_string()))
            }
        }
    }

    /// Least quadratic nonresidue modulo p.
    pub fn least_nonresidue(&self) -> Option<u64> {
        let p = self.modulus()?;
        (2..p).find(|&a| legendre_symbol(a, p) == -1)
    }

    /// Canonical representative of the square class of a nonzero scalar.
    pub fn square_class(&self, a: &FieldScalar) -> Result<SquareClass, ScalarError> {
        square_class_reduce(self, a)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(FieldDescriptor::Rationals);
        }
        let rest = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("F"))
            .ok_or_else(|| ScalarError::Parse(s.to_string()))?;
        let p: u64 = rest.trim().parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
        FieldDescriptor::prime_field(p)
    }
}

/// An exact element of ℚ or 𝔽_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl FieldScalar {
    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            FieldScalar::Rational(_) => FieldDescriptor::Rationals,
            FieldScalar::Modular { modulus, .. } => FieldDescriptor::PrimeField(*modulus),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldScalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Sign of a rational scalar; `None` over 𝔽_p.
    pub fn signum(&self) -> Option<i32> {
        match self {
            FieldScalar::Rational(q) => Some(if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            }),
            FieldScalar::Modular { .. } => None,
        }
    }

    pub fn to_f64(&self) -> Option<f64> {
        match self {
            FieldScalar::Rational(q) => Some(ratio_to_f64(q)),
            FieldScalar::Modular { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(q) => q.is_zero(),
            FieldScalar::Modular { value, .. } => *value == 0,
        }
    }
}

/// Float approximation that survives numerators beyond the f64 range.
pub fn ratio_to_f64(q: &BigRational) -> f64 {
    let n = q.numer();
    let d = q.denom();
    // Bring both to ~64 significant bits before dividing.
    let ns = (n.bits() as i64 - 64).max(0);
    let ds = (d.bits() as i64 - 64).max(0);
    let nf = (n >> ns as usize).to_f64().unwrap_or(0.0);
    let df = (d >> ds as usize).to_f64().unwrap_or(1.0);
    nf / df * 2f64.powi((ns - ds) as i32)
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldScalar::Modular { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

fn parse_bigint(s: &str) -> Result<BigInt, ScalarError> {
    s.trim().parse::<BigInt>().map_err(|_| ScalarError::Parse(s.to_string()))
}

impl FromStr for FieldScalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Some((n, p)) = t.split_once("mod") {
            let p: u64 = p.trim().parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
            let desc = FieldDescriptor::prime_field(p)?;
            return Ok(desc.from_bigint(&parse_bigint(n)?));
        }
        if let Some((n, d)) = t.split_once('/') {
            let n = parse_bigint(n)?;
            let d = parse_bigint(d)?;
            if d.is_zero() {
                return Err(ScalarError::ZeroDenominator);
            }
            return Ok(FieldScalar::Rational(BigRational::new(n, d)));
        }
        Ok(FieldScalar::Rational(BigRational::from_integer(parse_bigint(t)?)))
    }
}

fn mod_inv(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    let g = BigInt::from(a).extended_gcd(&BigInt::from(p));
    Some(g.x.mod_floor(&BigInt::from(p)).to_u64().unwrap())
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl Field for FieldDescriptor {
    type Elem = FieldScalar;

    fn lift_rational(&self, q: &BigRational) -> Option<FieldScalar> {
        match self {
            FieldDescriptor::Rationals => Some(FieldScalar::Rational(q.clone())),
            FieldDescriptor::PrimeField(_) => None,
        }
    }

    fn poly_mul(&self, a: &[FieldScalar], b: &[FieldScalar]) -> Option<Vec<FieldScalar>> {
        self.is_rationals().then(|| qpoly::mul(a, b)).flatten()
    }

    fn poly_rem(&self, a: &[FieldScalar], d: &[FieldScalar]) -> Option<Vec<FieldScalar>> {
        self.is_rationals().then(|| qpoly::rem(a, d)).flatten()
    }

    fn reduce_mod(&self, a: &FieldScalar, p: u64) -> Option<u64> {
        let FieldScalar::Rational(q) = a else { return None };
        let d = (q.denom().magnitude() % p).to_u64()?;
        if d == 0 {
            return None;
        }
        let mut n = (q.numer().magnitude() % p).to_u64()?;
        if q.numer().is_negative() && n != 0 {
            n = p - n;
        }
        let f = FieldDescriptor::PrimeField(p);
        let x = f.div(&FieldScalar::Modular { value: n, modulus: p }, &FieldScalar::Modular { value: d, modulus: p })?;
        match x {
            FieldScalar::Modular { value, .. } => Some(value),
            _ => None,
        }
    }

    fn zero(&self) -> FieldScalar {
        self.from_i64(0)
    }

    fn one(&self) -> FieldScalar {
        self.from_i64(1)
    }

    fn from_i64(&self, n: i64) -> FieldScalar {
        match self {
            FieldDescriptor::Rationals => FieldScalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldDescriptor::PrimeField(p) => FieldScalar::Modular {
                value: (n as i128).rem_euclid(*p as i128) as u64,
                modulus: *p,
            },
        }
    }

    fn add(&self, a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
        match (a, b) {
            (FieldScalar::Rational(x), FieldScalar::Rational(y)) => FieldScalar::Rational(x + y),
            (FieldScalar::Modular { value: x, modulus: p }, FieldScalar::Modular { value: y, .. }) => {
                FieldScalar::Modular { value: ((*x as u128 + *y as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => panic!("mixed base fields"),
        }
    }

    fn sub(&self, a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
        match (a, b) {
            (FieldScalar::Rational(x), FieldScalar::Rational(y)) => FieldScalar::Rational(x - y),
            (FieldScalar::Modular { value: x, modulus: p }, FieldScalar::Modular { value: y, .. }) => {
                FieldScalar::Modular { value: ((*x as u128 + *p as u128 - *y as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => panic!("mixed base fields"),
        }
    }

    fn mul(&self, a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
        match (a, b) {
            (FieldScalar::Rational(x), FieldScalar::Rational(y)) => FieldScalar::Rational(x * y),
            (FieldScalar::Modular { value: x, modulus: p }, FieldScalar::Modular { value: y, .. }) => {
                FieldScalar::Modular { value: mulmod(*x, *y, *p), modulus: *p }
            }
            _ => panic!("mixed base fields"),
        }
    }

    fn neg(&self, a: &FieldScalar) -> FieldScalar {
        match a {
            FieldScalar::Rational(x) => FieldScalar::Rational(-x),
            FieldScalar::Modular { value, modulus } => FieldScalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    fn is_zero(&self, a: &FieldScalar) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &FieldScalar) -> Option<FieldScalar> {
        match a {
            FieldScalar::Rational(x) => {
                if x.is_zero() {
                    None
                } else {
                    Some(FieldScalar::Rational(x.recip()))
                }
            }
            FieldScalar::Modular { value, modulus } => {
                mod_inv(*value, *modulus).map(|v| FieldScalar::Modular { value: v, modulus: *modulus })
            }
        }
    }

    fn characteristic(&self) -> u64 {
        self.modulus().unwrap_or(0)
    }
}

pub(crate) fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Exact square test for a rational.
pub fn rational_is_square(q: &BigRational) -> bool {
    is_perfect_square(q.numer()) && is_perfect_square(q.denom())
}

impl SquareTest for FieldDescriptor {
    fn is_square(&self, a: &FieldScalar) -> bool {
        match a {
            FieldScalar::Rational(q) => rational_is_square(q),
            FieldScalar::Modular { value, modulus } => *value == 0 || legendre_symbol(*value, *modulus) == 1,
        }
    }
}

/// Canonical representative of `K^× / (K^×)^2`.
///
/// Over ℚ the representative is the signed squarefree kernel. When the
/// kernel cannot be certified (an unfactored cofactor survived), `certified`
/// is false; equality still compares exactly through a square test of the
/// product of representatives.
#[derive(Clone, Debug, Eq, Serialize, Deserialize)]
pub struct SquareClass {
    pub descriptor: FieldDescriptor,
    pub rep: BigInt,
    pub certified: bool,
}

impl PartialEq for SquareClass {
    fn eq(&self, other: &Self) -> bool {
        if self.descriptor != other.descriptor {
            return false;
        }
        match self.descriptor {
            FieldDescriptor::PrimeField(_) => self.rep == other.rep,
            FieldDescriptor::Rationals => {
                if self.certified && other.certified {
                    self.rep == other.rep
                } else {
                    is_perfect_square(&(&self.rep * &other.rep))
                }
            }
        }
    }
}

impl SquareClass {
    pub fn one(descriptor: FieldDescriptor) -> SquareClass {
        SquareClass { descriptor, rep: BigInt::one(), certified: true }
    }

    pub fn to_scalar(&self) -> FieldScalar {
        self.descriptor.from_bigint(&self.rep)
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let prod = self.descriptor.mul(&self.to_scalar(), &other.to_scalar());
        square_class_reduce(&self.descriptor, &prod).expect("product of units is a unit")
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// Square-class reduction of a nonzero scalar.
pub fn square_class_reduce(desc: &FieldDescriptor, a: &FieldScalar) -> Result<SquareClass, ScalarError> {
    if a.is_zero() {
        return Err(ScalarError::ZeroInput);
    }
    match (desc, a) {
        (FieldDescriptor::Rationals, FieldScalar::Rational(q)) => {
            let n = symbols::integral_representative(q);
            let sign = n.sign();
            let mag = n.magnitude().clone();
            let (kernel, fact) = factor::squarefree_kernel(&mag, factor::DEFAULT_RHO_BUDGET);
            let rep = BigInt::from_biguint(if sign == Sign::Minus { Sign::Minus } else { Sign::Plus }, kernel);
            Ok(SquareClass { descriptor: *desc, rep, certified: fact.is_complete() })
        }
        (FieldDescriptor::PrimeField(p), FieldScalar::Modular { value, .. }) => {
            let rep = if legendre_symbol(*value, *p) == 1 {
                1
            } else {
                desc.least_nonresidue().expect("p > 2 has a nonresidue")
            };
            Ok(SquareClass { descriptor: *desc, rep: BigInt::from(rep), certified: true })
        }
        _ => panic!("scalar does not belong to {desc}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> FieldScalar {
        s.parse().unwrap()
    }

    #[test]
    fn parse_literals() {
        assert_eq!(q("8/18"), FieldDescriptor::Rationals.rational(4, 9));
        assert_eq!(q("12"), FieldDescriptor::Rationals.from_i64(12));
        assert_eq!(q("9 mod 7"), FieldScalar::Modular { value: 2, modulus: 7 });
        assert!("1/0".parse::<FieldScalar>().is_err());
        assert!("x".parse::<FieldScalar>().is_err());
        assert!("3 mod 3".parse::<FieldScalar>().is_err());
    }

    #[test]
    fn descriptor_rejects_small_or_composite() {
        assert!(FieldDescriptor::prime_field(2).is_err());
        assert!(FieldDescriptor::prime_field(3).is_err());
        assert!(FieldDescriptor::prime_field(9).is_err());
        assert!(FieldDescriptor::prime_field(101).is_ok());
        assert_eq!("Fp:101".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::PrimeField(101));
        assert_eq!("Q".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Rationals);
    }

    #[test]
    fn square_class_examples() {
        let qq = FieldDescriptor::Rationals;
        assert_eq!(qq.square_class(&q("8/18")).unwrap().rep, BigInt::from(1));
        assert_eq!(qq.square_class(&q("12")).unwrap().rep, BigInt::from(3));
        assert_eq!(qq.square_class(&q("-75/2")).unwrap().rep, BigInt::from(-6));
        let f7 = FieldDescriptor::prime_field(7).unwrap();
        assert_eq!(f7.square_class(&f7.from_i64(2)).unwrap().rep, BigInt::from(1));
        assert_eq!(f7.square_class(&f7.from_i64(3)).unwrap().rep, BigInt::from(3));
        assert_eq!(qq.square_class(&qq.zero()), Err(ScalarError::ZeroInput));
    }

    #[test]
    fn mod_p_arithmetic() {
        let f = FieldDescriptor::prime_field(101).unwrap();
        let a = f.from_i64(37);
        let ai = f.inv(&a).unwrap();
        assert!(f.is_one(&f.mul(&a, &ai)));
        assert_eq!(f.from_i64(-1), f.from_i64(100));
    }

    proptest! {
        #[test]
        fn square_class_ignores_square_factors_q(a in -5000i64..5000, c in 1i64..300, d in 1i64..50) {
            prop_assume!(a != 0);
            let qq = FieldDescriptor::Rationals;
            let x = qq.from_i64(a);
            let c2 = qq.rational(c * c, d * d);
            let lhs = qq.square_class(&qq.mul(&x, &c2)).unwrap();
            let rhs = qq.square_class(&x).unwrap();
            prop_assert_eq!(lhs.rep, rhs.rep);
        }

        #[test]
        fn square_class_ignores_square_factors_fp(a in 1u64..1009, c in 1u64..1009) {
            let f = FieldDescriptor::prime_field(1009).unwrap();
            let x = f.from_i64(a as i64);
            let cc = f.from_i64(c as i64);
            let y = f.mul(&x, &f.mul(&cc, &cc));
            prop_assert_eq!(f.square_class(&y).unwrap(), f.square_class(&x).unwrap());
        }

        #[test]
        fn legendre_multiplicative(a in 1u64..1009, b in 1u64..1009) {
            let p = 1009;
            prop_assert_eq!(legendre_symbol(a * b % p, p), legendre_symbol(a, p) * legendre_symbol(b, p));
        }

        #[test]
        fn hilbert_symmetric_and_bimultiplicative(a in -60i64..60, b in -60i64..60, c in -60i64..60) {
            prop_assume!(a != 0 && b != 0 && c != 0);
            let r = |n: i64| BigRational::from_integer(BigInt::from(n));
            for place in [Place::Infinity, Place::prime(2), Place::prime(3), Place::prime(5), Place::prime(7)] {
                prop_assert_eq!(hilbert_symbol(&r(a), &r(b), &place), hilbert_symbol(&r(b), &r(a), &place));
                prop_assert_eq!(
                    hilbert_symbol(&r(a), &r(b * c), &place),
                    hilbert_symbol(&r(a), &r(b), &place) * hilbert_symbol(&r(a), &r(c), &place)
                );
            }
        }

        #[test]
        fn hilbert_product_formula(a in -3000i64..3000, b in -3000i64..3000) {
            prop_assume!(a != 0 && b != 0);
            let r = |n: i64| BigRational::from_integer(BigInt::from(n));
            let mut places = vec![Place::Infinity, Place::prime(2)];
            let f = factor::factor(&BigUint::from((a.unsigned_abs()) * (b.unsigned_abs())), 10_000);
            for p in f.primes.keys() {
                if *p != BigUint::from(2u32) {
                    places.push(Place::Prime(p.clone()));
                }
            }
            let prod: i32 = places.iter().map(|v| hilbert_symbol(&r(a), &r(b), v)).product();
            prop_assert_eq!(prod, 1);
        }
    }
}
