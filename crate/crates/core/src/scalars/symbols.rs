//! Legendre, Jacobi and Hilbert symbols.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A place of ℚ: a finite prime or the real place.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Place {
    Prime(BigUint),
    Infinity,
}

impl Place {
    pub fn prime(p: u64) -> Place {
        Place::Prime(BigUint::from(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// Legendre symbol `(a | p)` for an odd prime `p`.
pub fn legendre_symbol(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let r = pow_mod(a, (p - 1) / 2, p);
    if r == 1 {
        1
    } else {
        -1
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Jacobi symbol `(a | n)` for odd positive `n`.
pub fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    assert!(n.is_odd(), "jacobi symbol needs an odd modulus");
    let n_int = BigInt::from_biguint(Sign::Plus, n.clone());
    let mut a = a.mod_floor(&n_int).to_biguint().expect("non-negative after mod_floor");
    let mut n = n.clone();
    let mut result = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Integer in the same square class as a nonzero rational: `num * den`.
pub(crate) fn integral_representative(a: &BigRational) -> BigInt {
    a.numer() * a.denom()
}

pub(crate) fn split_valuation(n: &BigInt, p: &BigUint) -> (u64, BigInt) {
    let p = BigInt::from_biguint(Sign::Plus, p.clone());
    let mut v = 0;
    let mut u = n.clone();
    while (&u % &p).is_zero() {
        u /= &p;
        v += 1;
    }
    (v, u)
}

fn epsilon(u: &BigInt) -> u32 {
    // (u - 1)/2 mod 2 for odd u
    match u.mod_floor(&BigInt::from(4)).to_u32().unwrap() {
        1 => 0,
        _ => 1,
    }
}

fn omega(u: &BigInt) -> u32 {
    // (u^2 - 1)/8 mod 2 for odd u
    match u.mod_floor(&BigInt::from(8)).to_u32().unwrap() {
        1 | 7 => 0,
        _ => 1,
    }
}

/// Hilbert symbol `(a, b)_v` of nonzero rationals at the place `v`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: &Place) -> i32 {
    assert!(!a.is_zero() && !b.is_zero(), "hilbert symbol of zero");
    let a = integral_representative(a);
    let b = integral_representative(b);
    hilbert_symbol_int(&a, &b, place)
}

pub(crate) fn hilbert_symbol_int(a: &BigInt, b: &BigInt, place: &Place) -> i32 {
    match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, v) = split_valuation(b, p);
            if *p == BigUint::from(2u32) {
                let e = epsilon(&u) * epsilon(&v)
                    + (alpha % 2) as u32 * omega(&v)
                    + (beta % 2) as u32 * omega(&u);
                if e % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                let mut s = 1;
                let half = (p - 1u32) / 2u32;
                if (alpha * beta) % 2 == 1 && half.is_odd() {
                    s = -s;
                }
                if beta % 2 == 1 {
                    s *= jacobi(&u, p);
                }
                if alpha % 2 == 1 {
                    s *= jacobi(&v, p);
                }
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn squares_mod(p: u64) -> Vec<u64> {
        let mut s: Vec<u64> = (1..p).map(|x| x * x % p).collect();
        s.sort();
        s.dedup();
        s
    }

    #[test]
    fn legendre_matches_enumeration() {
        let sq = squares_mod(7);
        assert_eq!(sq, vec![1, 2, 4]);
        assert_eq!(legendre_symbol(2, 7), 1);
        assert_eq!(legendre_symbol(3, 7), -1);
        assert_eq!(legendre_symbol(0, 7), 0);
        for p in [5u64, 11, 13, 101] {
            let sq = squares_mod(p);
            for a in 1..p {
                let expected = if sq.contains(&a) { 1 } else { -1 };
                assert_eq!(legendre_symbol(a, p), expected, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn jacobi_agrees_with_legendre_on_primes() {
        for p in [3u64, 5, 7, 11, 101, 1009] {
            for a in -20i64..20 {
                let expect = legendre_symbol(a.rem_euclid(p as i64) as u64, p);
                assert_eq!(jacobi(&BigInt::from(a), &BigUint::from(p)), expect);
            }
        }
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &Place::Infinity), -1);
        assert_eq!(hilbert_symbol(&q(2), &q(5), &Place::prime(5)), -1);
        assert_eq!(hilbert_symbol(&q(5), &q(5), &Place::prime(5)), 1);
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &Place::prime(2)), -1);
        assert_eq!(hilbert_symbol(&q(2), &q(2), &Place::prime(2)), 1);
    }

    /// Brute-force oracle at odd p: (a, b)_p = 1 iff z^2 = a x^2 + b y^2 has a
    /// primitive solution mod p^(v+1) for units / simple valuations; checked
    /// through the local solvability of the norm form mod p^3.
    fn hilbert_brute(a: i64, b: i64, p: i64) -> i32 {
        let m = p * p * p;
        for x in 0..m {
            for y in 0..m {
                let rhs = (a * x * x + b * y * y).rem_euclid(m);
                for z in 0..m {
                    if (x % p != 0 || y % p != 0 || z % p != 0) && (z * z).rem_euclid(m) == rhs {
                        return 1;
                    }
                }
            }
        }
        -1
    }

    #[test]
    fn hilbert_odd_prime_against_brute_force() {
        for &(a, b) in &[(2, 3), (3, 3), (-1, 3), (6, 15), (5, 10), (-3, -3), (7, 3)] {
            assert_eq!(
                hilbert_symbol(&q(a), &q(b), &Place::prime(3)),
                hilbert_brute(a, b, 3),
                "({a},{b})_3"
            );
        }
    }
}
