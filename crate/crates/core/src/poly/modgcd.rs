//! Modular gcd for fields with a reduction map to word-size primes.
//!
//! Images modulo several 61-bit primes are combined by CRT and lifted by
//! rational reconstruction; the candidate is accepted only after exact
//! division of both inputs, so the answer never depends on luck.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::Field;
use crate::scalars::factor::is_probable_prime;
use crate::scalars::{FieldDescriptor, FieldScalar};

use super::UniPoly;

const MAX_PRIMES: usize = 64;

pub(crate) fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(MAX_PRIMES);
        let mut n: u64 = (1 << 61) - 1;
        while out.len() < MAX_PRIMES {
            if is_probable_prime(&BigUint::from(n)) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn image<F: Field>(f: &F, a: &UniPoly<F::Elem>, p: u64) -> Option<UniPoly<FieldScalar>> {
    let fp = FieldDescriptor::PrimeField(p);
    let cs: Option<Vec<FieldScalar>> = a.coeffs().iter().map(|c| f.reduce_mod(c, p).map(|v| FieldScalar::Modular { value: v, modulus: p })).collect();
    let img = UniPoly::new(&fp, cs?);
    (img.degree() == a.degree()).then_some(img)
}

fn gcd_mod(a: UniPoly<FieldScalar>, b: UniPoly<FieldScalar>, fp: &FieldDescriptor) -> UniPoly<FieldScalar> {
    let (mut x, mut y) = (a, b);
    while !y.is_zero() {
        let r = x.rem(fp, &y).expect("field coefficients");
        x = y;
        y = r;
    }
    x.monic(fp)
}

/// Reconstruct `n / d` from `u mod m` with `|n|, d < sqrt(m / 2)`.
fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Monic gcd, or `None` if the field lacks the reduction hooks or the
/// prime budget runs out.
pub(crate) fn modular_gcd<F: Field>(f: &F, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> Option<UniPoly<F::Elem>> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    f.lift_rational(&BigRational::one())?;
    let mut degree = usize::MAX;
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut used = 0usize;
    for &p in primes() {
        let (Some(ia), Some(ib)) = (image(f, a, p), image(f, b, p)) else { continue };
        let fp = FieldDescriptor::PrimeField(p);
        let g = gcd_mod(ia, ib, &fp);
        let d = g.deg();
        if d > degree {
            continue;
        }
        if d == 0 {
            return Some(UniPoly::one(f));
        }
        let coeffs: Vec<BigInt> = g
            .coeffs()
            .iter()
            .map(|c| match c {
                FieldScalar::Modular { value, .. } => BigInt::from(*value),
                _ => unreachable!(),
            })
            .collect();
        let pb = BigInt::from(p);
        if d < degree {
            degree = d;
            residues = coeffs;
            modulus = pb;
        } else {
            // CRT: x = r + M * ((c - r) * M^-1 mod p)
            let minv = modulus.modinv(&pb).expect("distinct primes");
            for (r, c) in residues.iter_mut().zip(coeffs) {
                let t = ((c - &*r) * &minv).mod_floor(&pb);
                *r += &modulus * t;
            }
            modulus *= pb;
        }
        used += 1;
        if used % 2 == 1 || used > 8 {
            let lifted: Option<Vec<F::Elem>> =
                residues.iter().map(|r| rational_reconstruct(r, &modulus).and_then(|q| f.lift_rational(&q))).collect();
            if let Some(cs) = lifted {
                let cand = UniPoly::new(f, cs);
                let divides = |x: &UniPoly<F::Elem>| x.rem(f, &cand).map(|r| r.is_zero()).unwrap_or(false);
                if divides(a) && divides(b) {
                    return Some(cand);
                }
            }
        }
    }
    None
}
