//! Hasse–Minkowski invariants over ℚ.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalars::factor::{factor, is_probable_prime, perfect_power, DEFAULT_RHO_BUDGET, FULL_EFFORT_BITS};
use crate::scalars::symbols::{hilbert_symbol_int, split_valuation};
use crate::scalars::{FieldDescriptor, Place, SquareClass};

use super::{to_bigint_rep, GWInvariants, GwError, QuadForm};

/// Integral representatives of the entries together with the primes that
/// could be found and the pairwise coprime composites that could not.
struct Profile {
    reps: Vec<BigInt>,
    known: BTreeSet<BigUint>,
    /// `(cofactor, valuation of each entry)`; only cofactors some entry
    /// meets with odd valuation are kept.
    unresolved: Vec<(BigUint, Vec<u64>)>,
}

/// Pairwise coprime set generating the same multiplicative monoid.
/// Elements are inserted one at a time; a clash `gcd(b, x) = g > 1`
/// replaces `b` and `x` by `b/g, g, x/g`, which lowers the total product.
fn coprime_base(xs: Vec<BigUint>) -> Vec<BigUint> {
    let mut base: Vec<BigUint> = Vec::new();
    let mut stack = xs;
    while let Some(x) = stack.pop() {
        if x.is_one() || x.is_zero() {
            continue;
        }
        let clash = base.iter().enumerate().find_map(|(i, b)| {
            let g = b.gcd(&x);
            (!g.is_one()).then_some((i, g))
        });
        match clash {
            None => base.push(x),
            Some((i, g)) => {
                let b = base.swap_remove(i);
                stack.extend([&b / &g, &x / &g, g]);
            }
        }
    }
    let mut out: Vec<BigUint> = base.into_iter().map(|x| if x.bits() > FULL_EFFORT_BITS { x } else { perfect_power(&x).0 }).collect();
    out.sort();
    out.dedup();
    out
}

fn valuation(n: &BigInt, p: &BigUint) -> u64 {
    split_valuation(n, p).0
}

fn profile(reps: Vec<BigInt>) -> Profile {
    let mut known: BTreeSet<BigUint> = BTreeSet::new();
    known.insert(BigUint::from(2u32));
    let mut cofactors = Vec::new();
    for r in &reps {
        let fact = factor(r.magnitude(), DEFAULT_RHO_BUDGET);
        known.extend(fact.primes.into_keys());
        cofactors.extend(fact.unresolved.into_iter().map(|(c, _)| c));
    }
    let mut unresolved = Vec::new();
    if !cofactors.is_empty() {
        let mut all: Vec<BigUint> = known.iter().cloned().collect();
        all.extend(cofactors);
        for b in coprime_base(all) {
            if b.bits() <= FULL_EFFORT_BITS && is_probable_prime(&b) {
                known.insert(b);
            } else {
                let vals: Vec<u64> = reps.iter().map(|r| valuation(r, &b)).collect();
                if vals.iter().any(|v| v % 2 == 1) {
                    unresolved.push((b, vals));
                }
            }
        }
    }
    Profile { reps, known, unresolved }
}

/// Small integer with the same Hilbert symbols at `p` as `n`.
fn local_proxy(n: &BigInt, p: &BigUint) -> BigInt {
    let (v, u) = split_valuation(n, p);
    let pb = BigInt::from_biguint(Sign::Plus, p.clone());
    let m = if *p == BigUint::from(2u32) { BigInt::from(8) } else { pb.clone() };
    let unit = u.mod_floor(&m);
    if v % 2 == 1 {
        unit * pb
    } else {
        unit
    }
}

fn hasse_of_reps(reps: &[BigInt], place: &Place) -> i32 {
    match place {
        Place::Infinity => {
            let neg = reps.iter().filter(|r| r.is_negative()).count();
            if (neg * neg.saturating_sub(1) / 2) % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let proxies: Vec<BigInt> = reps.iter().map(|r| local_proxy(r, p)).collect();
            let mut s = 1;
            for i in 0..proxies.len() {
                for j in i + 1..proxies.len() {
                    s *= hilbert_symbol_int(&proxies[i], &proxies[j], place);
                }
            }
            s
        }
    }
}

/// Hasse symbol `prod_{i<j} (a_i, a_j)_v` of a form over ℚ at one place.
pub fn hasse_at(q: &QuadForm, place: &Place) -> i32 {
    assert!(q.base().is_rationals(), "Hasse symbols are defined over Q only");
    let reps: Vec<BigInt> = q.entries().iter().map(to_bigint_rep).collect();
    hasse_of_reps(&reps, place)
}

fn disc_class(p: &Profile) -> SquareClass {
    let negative = p.reps.iter().filter(|r| r.is_negative()).count() % 2 == 1;
    let mut rep = BigUint::one();
    for prime in &p.known {
        let total: u64 = p.reps.iter().map(|r| valuation(r, prime)).sum();
        if total % 2 == 1 {
            rep *= prime;
        }
    }
    let mut certified = true;
    for (b, vals) in &p.unresolved {
        if vals.iter().sum::<u64>() % 2 == 1 {
            rep *= b;
            certified = false;
        }
    }
    let sign = if negative { Sign::Minus } else { Sign::Plus };
    SquareClass { descriptor: FieldDescriptor::Rationals, rep: BigInt::from_biguint(sign, rep), certified }
}

pub(super) fn invariants(q: &QuadForm) -> GWInvariants {
    let p = profile(q.entries().iter().map(to_bigint_rep).collect());
    let pos = p.reps.iter().filter(|r| r.is_positive()).count() as i64;
    let neg = p.reps.len() as i64 - pos;
    let mut hasse = BTreeMap::new();
    hasse.insert(Place::Infinity, hasse_of_reps(&p.reps, &Place::Infinity));
    for prime in &p.known {
        let place = Place::Prime(prime.clone());
        let h = hasse_of_reps(&p.reps, &place);
        hasse.insert(place, h);
    }
    GWInvariants {
        rank: p.reps.len(),
        disc: disc_class(&p),
        signature: Some(pos - neg),
        hasse,
        unresolved: p.unresolved.iter().map(|(b, _)| b.clone()).collect(),
    }
}

pub(super) fn equivalent(a: &QuadForm, b: &QuadForm) -> Result<bool, GwError> {
    let ra: Vec<BigInt> = a.entries().iter().map(to_bigint_rep).collect();
    let rb: Vec<BigInt> = b.entries().iter().map(to_bigint_rep).collect();
    let sig = |r: &[BigInt]| r.iter().map(|x| if x.is_positive() { 1i64 } else { -1 }).sum::<i64>();
    if sig(&ra) != sig(&rb) {
        return Ok(false);
    }
    let prod: BigInt = ra.iter().chain(&rb).product();
    if !crate::scalars::is_perfect_square(&prod) {
        return Ok(false);
    }
    let joint = profile(ra.iter().chain(&rb).cloned().collect());
    for prime in &joint.known {
        let place = Place::Prime(prime.clone());
        if hasse_of_reps(&ra, &place) != hasse_of_reps(&rb, &place) {
            return Ok(false);
        }
    }
    if hasse_of_reps(&ra, &Place::Infinity) != hasse_of_reps(&rb, &Place::Infinity) {
        return Ok(false);
    }
    if joint.unresolved.is_empty() {
        Ok(true)
    } else {
        Err(GwError::Inconclusive(joint.unresolved.iter().map(|(c, _)| c.to_string()).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coprime_base_refines() {
        let b = coprime_base(vec![BigUint::from(12u32), BigUint::from(18u32), BigUint::from(35u32)]);
        assert_eq!(b, vec![BigUint::from(2u32), BigUint::from(3u32), BigUint::from(35u32)]);
    }

    #[test]
    fn proxy_preserves_symbols() {
        for a in [-50i64, -7, 3, 12, 98, 250] {
            for bb in [-3i64, 5, 6, 45, -1000] {
                for p in [2u64, 3, 5, 7] {
                    let place = Place::prime(p);
                    let (x, y) = (BigInt::from(a), BigInt::from(bb));
                    let pb = BigUint::from(p);
                    assert_eq!(
                        hilbert_symbol_int(&x, &y, &place),
                        hilbert_symbol_int(&local_proxy(&x, &pb), &local_proxy(&y, &pb), &place)
                    );
                }
            }
        }
    }
}
