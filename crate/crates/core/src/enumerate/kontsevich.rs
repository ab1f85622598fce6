//! Number of rational plane curves of degree `d` through `3d - 1` general points.

use num_bigint::BigInt;
use num_traits::{One, Zero};

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `N_1, ..., N_d` by the associativity recursion; `None` outside `1..=12`.
pub fn kontsevich_n(d: u32) -> Option<Vec<BigInt>> {
    if !(1..=12).contains(&d) {
        return None;
    }
    let mut n = vec![BigInt::zero(), BigInt::one()];
    for dd in 2..=u64::from(d) {
        let mut acc = BigInt::zero();
        for d1 in 1..dd {
            let d2 = dd - d1;
            let prod = &n[d1 as usize] * &n[d2 as usize];
            let a = BigInt::from(d1 * d1 * d2 * d2) * binomial(3 * dd - 4, 3 * d1 - 2);
            let b = BigInt::from(d1 * d1 * d1 * d2) * binomial(3 * dd - 4, 3 * d1 - 1);
            acc += prod * (a - b);
        }
        n.push(acc);
    }
    Some(n.split_off(1))
}
