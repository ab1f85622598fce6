//! Integer factorization with a bounded effort budget.
//!
//! Trial division by small primes, Miller-Rabin, then Brent's variant of
//! Pollard rho. Whatever cannot be split within the budget is returned as an
//! unresolved cofactor instead of being guessed.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_LIMIT: u32 = 1 << 16;
/// Rho iterations spent on a single composite before giving up on it.
pub const DEFAULT_RHO_BUDGET: u64 = 200_000;
/// Cofactors above this size get trial division only and are reported as
/// unresolved; primality and perfect-power tests are skipped for them.
pub const FULL_EFFORT_BITS: u64 = 2048;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

/// Result of a (possibly partial) factorization.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization {
    pub primes: BTreeMap<BigUint, u32>,
    /// Composite cofactors that resisted the budget, with their multiplicity.
    pub unresolved: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }

    fn push_prime(&mut self, p: BigUint, e: u32) {
        *self.primes.entry(p).or_insert(0) += e;
    }
}

/// Deterministic below 3.3e24, probabilistic (fixed bases) above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in small_primes().iter().take(60) {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Returns `(r, k)` with `r^k = n` and `k` maximal.
pub fn perfect_power(n: &BigUint) -> (BigUint, u32) {
    if *n <= BigUint::one() {
        return (n.clone(), 1);
    }
    let bits = n.bits() as u32;
    let mut best = (n.clone(), 1);
    // Exponents above 64 only matter for roots below 2^16, which trial
    // division has already removed.
    for k in 2..=bits.min(64) {
        let r = n.nth_root(k);
        if r <= BigUint::one() {
            break;
        }
        if r.pow(k) == *n {
            best = (r, k);
        }
    }
    best
}

fn pollard_brent(n: &BigUint, seed: u64, budget: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    let c = BigUint::from(seed % 1000 + 1);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(seed % 97 + 2) % n;
    let m = 128u64;
    let mut g = one.clone();
    let mut r = 1u64;
    let mut q = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut spent = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0u64;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
            spent += m;
        }
        r *= 2;
        if spent > budget {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if g == *n || g.is_one() {
        None
    } else {
        Some(g)
    }
}

/// Factor `n > 0` spending at most `rho_budget` rho iterations per composite.
pub fn factor(n: &BigUint, rho_budget: u64) -> Factorization {
    let mut out = Factorization::default();
    if n.is_zero() || n.is_one() {
        return out;
    }
    let mut rest = n.clone();
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if (&rest % &pb).is_zero() {
            let mut e = 0;
            while (&rest % &pb).is_zero() {
                rest /= &pb;
                e += 1;
            }
            out.push_prime(pb, e);
        }
        if rest.is_one() {
            return out;
        }
        if let Some(r) = rest.to_u64() {
            if u64::from(p) * u64::from(p) > r {
                out.push_prime(rest, 1);
                return out;
            }
        }
    }
    let mut stack = vec![(rest, 1u32)];
    while let Some((m, e)) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if m.bits() > FULL_EFFORT_BITS {
            out.unresolved.push((m, e));
            continue;
        }
        let (root, k) = perfect_power(&m);
        if k > 1 {
            stack.push((root, e * k));
            continue;
        }
        if is_probable_prime(&m) {
            out.push_prime(m, e);
            continue;
        }
        // Scale the iteration budget down for operands whose products are slow.
        let bits = m.bits().max(1);
        let budget = if bits > 512 { rho_budget * 512 * 512 / (bits * bits) } else { rho_budget };
        let mut split = None;
        for seed in 1..=4u64 {
            if let Some(d) = pollard_brent(&m, seed, budget / 4) {
                split = Some(d);
                break;
            }
        }
        match split {
            Some(d) => {
                let other = &m / &d;
                stack.push((d, e));
                stack.push((other, e));
            }
            None => out.unresolved.push((m, e)),
        }
    }
    out.unresolved.sort();
    out
}

/// Squarefree kernel of `n` together with the factorization used.
/// When the factorization is incomplete, unresolved cofactors with odd
/// multiplicity are kept whole (they may hide square factors).
pub fn squarefree_kernel(n: &BigUint, rho_budget: u64) -> (BigUint, Factorization) {
    let fact = factor(n, rho_budget);
    let mut kernel = BigUint::one();
    for (p, e) in &fact.primes {
        if e % 2 == 1 {
            kernel *= p;
        }
    }
    for (c, e) in &fact.unresolved {
        if e % 2 == 1 {
            kernel *= c;
        }
    }
    (kernel, fact)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn small_factorizations() {
        let f = factor(&big(360), DEFAULT_RHO_BUDGET);
        assert!(f.is_complete());
        assert_eq!(f.primes.get(&big(2)), Some(&3));
        assert_eq!(f.primes.get(&big(3)), Some(&2));
        assert_eq!(f.primes.get(&big(5)), Some(&1));
    }

    #[test]
    fn semiprime_beyond_trial_division() {
        let p = big(1_000_003);
        let q = big(998_244_353);
        let f = factor(&(&p * &q * &q), DEFAULT_RHO_BUDGET);
        assert!(f.is_complete());
        assert_eq!(f.primes.get(&p), Some(&1));
        assert_eq!(f.primes.get(&q), Some(&2));
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&big(1_000_000_007)));
        assert!(!is_probable_prime(&big(1_000_000_007 * 3)));
        assert!(!is_probable_prime(&big(561)));
    }

    #[test]
    fn kernel_of_square_times_three() {
        let (k, _) = squarefree_kernel(&big(12), DEFAULT_RHO_BUDGET);
        assert_eq!(k, big(3));
    }
}
