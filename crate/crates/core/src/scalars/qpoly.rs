//! Polynomial multiplication and remainder over ℚ on integer numerators
//! with a common denominator, normalizing each coefficient once.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::FieldScalar;

fn rat(a: &FieldScalar) -> Option<&BigRational> {
    a.as_rational()
}

/// Integer numerators and their common denominator.
fn clear(a: &[FieldScalar]) -> Option<(Vec<BigInt>, BigInt)> {
    let qs: Vec<&BigRational> = a.iter().map(rat).collect::<Option<_>>()?;
    let den = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    Some((qs.iter().map(|q| q.numer() * (&den / q.denom())).collect(), den))
}

fn fractions(nums: Vec<BigInt>, den: &BigInt) -> Vec<FieldScalar> {
    nums.into_iter().map(|n| FieldScalar::Rational(BigRational::new(n, den.clone()))).collect()
}

pub(super) fn mul(a: &[FieldScalar], b: &[FieldScalar]) -> Option<Vec<FieldScalar>> {
    let (x, dx) = clear(a)?;
    let (y, dy) = clear(b)?;
    let mut c = vec![BigInt::zero(); x.len() + y.len() - 1];
    for (i, u) in x.iter().enumerate() {
        if u.is_zero() {
            continue;
        }
        for (j, v) in y.iter().enumerate() {
            c[i + j] += u * v;
        }
    }
    Some(fractions(c, &(dx * dy)))
}

/// Remainder by pseudo-division, scaling by `lc(d) / gcd(lc(d), c)` only.
pub(super) fn rem(a: &[FieldScalar], d: &[FieldScalar]) -> Option<Vec<FieldScalar>> {
    let n = d.len() - 1;
    if a.len() <= n {
        return Some(a.to_vec());
    }
    let (mut r, da) = clear(a)?;
    let (dv, _) = clear(d)?;
    let lead = dv[n].clone();
    let mut scale = BigInt::one();
    for k in (0..r.len() - n).rev() {
        let c = std::mem::take(&mut r[k + n]);
        if c.is_zero() {
            continue;
        }
        let g = lead.gcd(&c);
        let (m, c) = (&lead / &g, c / &g);
        if !m.is_one() {
            for x in r.iter_mut().take(k + n) {
                *x *= &m;
            }
            scale *= &m;
        }
        for (j, dj) in dv.iter().take(n).enumerate() {
            r[k + j] -= &c * dj;
        }
    }
    r.truncate(n);
    Some(fractions(r, &(scale * da)))
}
