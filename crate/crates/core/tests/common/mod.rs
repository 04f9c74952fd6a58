//! Shared helpers for the integration tests: seeded generators and
//! brute-force oracles that do not go through the library's own routines.
#![allow(dead_code)]

use biquad::arith::SquareClass;
use biquad::tower::BiquadField;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sc(n: i128) -> SquareClass {
    SquareClass::from_int(n).unwrap()
}

pub fn trial_is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

pub fn small_primes(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&n| trial_is_prime(n)).collect()
}

pub fn is_squarefree(n: i64) -> bool {
    let m = n.unsigned_abs();
    m != 0
        && (2..)
            .take_while(|d| d * d <= m)
            .all(|d| !m.is_multiple_of(d * d))
}

/// Whether `a` is a nonzero square modulo the odd prime `p`, by listing squares.
pub fn is_qr(a: i64, p: u64) -> bool {
    let r = a.rem_euclid(p as i64) as u64;
    r != 0 && (1..p).any(|x| x * x % p == r)
}

/// A random square-free integer in `[-bound, bound]` other than `0` and `1`.
pub fn random_squarefree<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 1 && is_squarefree(n) {
            return n;
        }
    }
}

/// A random biquadratic field with square-free generators in `[-bound, bound]`.
pub fn random_field<R: Rng>(rng: &mut R, bound: i64) -> BiquadField {
    loop {
        let a = random_squarefree(rng, bound);
        let b = random_squarefree(rng, bound);
        if let Ok(k) = BiquadField::from_ints(a as i128, b as i128) {
            return k;
        }
    }
}

/// Up to `max_len` distinct primes below `limit`.
pub fn random_support<R: Rng>(rng: &mut R, max_len: usize, limit: u64) -> Vec<u64> {
    let primes = small_primes(limit);
    let len = rng.gen_range(0..=max_len);
    let mut out: Vec<u64> = (0..len)
        .map(|_| primes[rng.gen_range(0..primes.len())])
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Smallest prime `>= min` outside `exclude` whose residues lie in the given
/// sets, by plain enumeration and trial division.
pub fn brute_prime(constraints: &[(u64, &[u64])], min: u64, exclude: &[u64]) -> u64 {
    (min..)
        .find(|&n| {
            trial_is_prime(n)
                && !exclude.contains(&n)
                && constraints.iter().all(|(m, rs)| rs.contains(&(n % m)))
        })
        .unwrap()
}
