//! Oracles that share no code path with the library's counting routines.

#![allow(dead_code)]

use num_bigint::BigUint;

/// All partitions of `n` as plain vectors, by recursion on the largest part.
pub fn partitions_of(n: u32) -> Vec<Vec<u32>> {
    fn go(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn contained(mu: &[u32], lambda: &[u32]) -> bool {
    mu.len() <= lambda.len() && mu.iter().zip(lambda).all(|(a, b)| a <= b)
}

/// Every subpartition of `lambda`, found by scanning all partitions of
/// every `m <= |lambda|`.
pub fn subpartitions_by_scan(lambda: &[u32]) -> Vec<Vec<u32>> {
    let n: u32 = lambda.iter().sum();
    (0..=n)
        .flat_map(partitions_of)
        .filter(|mu| contained(mu, lambda))
        .collect()
}

/// Chains `mu_k <= ... <= mu_1 <= lambda` by explicit tuple enumeration.
pub fn chains_by_scan(lambda: &[u32], k: u32, strict: bool) -> u64 {
    let subs = subpartitions_by_scan(lambda);
    fn go(subs: &[Vec<u32>], above: &[u32], left: u32, strict: bool, top: bool) -> u64 {
        if left == 0 {
            return 1;
        }
        subs.iter()
            .filter(|mu| contained(mu, above) && (top || !strict || mu.as_slice() != above))
            .map(|mu| go(subs, mu, left - 1, strict, false))
            .sum()
    }
    go(&subs, lambda, k, strict, true)
}

/// Plane partitions in an `a x b x c` box.
pub fn macmahon(a: u32, b: u32, c: u32) -> BigUint {
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 1..=a {
        for j in 1..=b {
            for l in 1..=c {
                num *= i + j + l - 1;
                den *= i + j + l - 2;
            }
        }
    }
    assert_eq!(&num % &den, BigUint::from(0u32));
    num / den
}

/// Brute-force maximum of `f` over a small grid, used as a Legendre oracle
/// independent of the bisection in the library.
pub fn legendre_grid(x: f64) -> f64 {
    let mut best = f64::NEG_INFINITY;
    let mut t = -20.0;
    while t <= 20.0 {
        best = best.max(t * x - t.cosh().ln());
        t += 1e-4;
    }
    best
}
