use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{mul_mod, pow_mod, ArithError, DEFAULT_SEARCH_CAP};

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const SEGMENT: u64 = 1 << 15;

/// Primes in `[lo, hi]` in increasing order, from a segmented sieve of
/// Eratosthenes.
pub fn primes_between(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    let lo = lo.max(2);
    let base = small_primes(hi.isqrt() + 1);
    let mut start = lo;
    let mut pending: Vec<u64> = Vec::new();
    std::iter::from_fn(move || loop {
        if let Some(p) = pending.pop() {
            return Some(p);
        }
        if start > hi {
            return None;
        }
        let end = hi.min(start.saturating_add(SEGMENT - 1));
        let mut composite = vec![false; (end - start + 1) as usize];
        for &p in &base {
            if p * p > end {
                break;
            }
            let first = (p * p).max(start.div_ceil(p) * p);
            let mut m = first;
            while m <= end {
                composite[(m - start) as usize] = true;
                m += p;
            }
        }
        pending = composite
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| start + i as u64)
            .collect();
        start = match end.checked_add(1) {
            Some(s) => s,
            None => return pending.pop(),
        };
    })
}

fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

/// `n mod modulus ∈ allowed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceConstraint {
    modulus: u64,
    allowed: BTreeSet<u64>,
}

impl CongruenceConstraint {
    /// Residues are reduced modulo `modulus`.
    pub fn new<I: IntoIterator<Item = i64>>(modulus: u64, allowed: I) -> Result<Self, ArithError> {
        if modulus < 2 {
            return Err(ArithError::BadModulus(modulus));
        }
        let allowed: BTreeSet<u64> = allowed
            .into_iter()
            .map(|r| (r as i128).rem_euclid(modulus as i128) as u64)
            .collect();
        if allowed.is_empty() {
            return Err(ArithError::EmptyConstraint(modulus));
        }
        Ok(CongruenceConstraint { modulus, allowed })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn allowed(&self) -> &BTreeSet<u64> {
        &self.allowed
    }

    pub fn admits(&self, n: u64) -> bool {
        self.allowed.contains(&(n % self.modulus))
    }
}

/// Searches residue combinations depth-first for one that the generalized CRT
/// accepts. `None` from a combination means the combined modulus overflowed,
/// which is treated as consistent.
fn satisfiable(constraints: &[CongruenceConstraint]) -> bool {
    fn go(rest: &[CongruenceConstraint], r: u128, m: u128) -> bool {
        let Some((c, tail)) = rest.split_first() else {
            return true;
        };
        let n = c.modulus as u128;
        let g = m.gcd(&n);
        for &a in &c.allowed {
            let a = a as u128;
            if (a % g) != (r % g) {
                continue;
            }
            let Some(lcm) = (m / g).checked_mul(n) else {
                return true;
            };
            // first x ≡ r (mod m) with x ≡ a (mod n); lcm stays small at desk scale
            let mut x = r;
            let step = m;
            let mut found = None;
            for _ in 0..(n / g) {
                if x % n == a {
                    found = Some(x);
                    break;
                }
                x += step;
            }
            if let Some(x) = found {
                if go(tail, x % lcm, lcm) {
                    return true;
                }
            }
        }
        false
    }
    go(constraints, 0, 1)
}

/// Smallest prime `p ≥ min`, `p ∉ exclude`, meeting every constraint, with
/// the default search cap.
pub fn find_prime(
    constraints: &[CongruenceConstraint],
    min: u64,
    exclude: &BTreeSet<u64>,
) -> Result<u64, ArithError> {
    find_prime_with(constraints, min, exclude, DEFAULT_SEARCH_CAP)
}

pub fn find_prime_with(
    constraints: &[CongruenceConstraint],
    min: u64,
    exclude: &BTreeSet<u64>,
    cap: u64,
) -> Result<u64, ArithError> {
    if !satisfiable(constraints) {
        return Err(ArithError::Unsatisfiable);
    }
    primes_between(min, cap)
        .find(|p| !exclude.contains(p) && constraints.iter().all(|c| c.admits(*p)))
        .ok_or(ArithError::SearchBoundExceeded { cap })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_is_prime(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime(n), trial_is_prime(n), "n={n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn segmented_sieve_matches_trial_division() {
        let got: Vec<u64> = primes_between(0, 100_000).collect();
        let want: Vec<u64> = (0..=100_000).filter(|&n| trial_is_prime(n)).collect();
        assert_eq!(got, want);
        let window: Vec<u64> = primes_between(99_990, 100_100).collect();
        assert_eq!(
            window,
            vec![99_991, 100_003, 100_019, 100_043, 100_049, 100_057, 100_069]
        );
    }

    #[test]
    fn constraint_reduces_residues() {
        let c = CongruenceConstraint::new(5, [6, -1]).unwrap();
        assert_eq!(c.allowed().iter().copied().collect::<Vec<_>>(), vec![1, 4]);
        assert_eq!(
            CongruenceConstraint::new(1, [0]),
            Err(ArithError::BadModulus(1))
        );
        assert_eq!(
            CongruenceConstraint::new(3, []),
            Err(ArithError::EmptyConstraint(3))
        );
    }

    #[test]
    fn simple_searches() {
        let none = BTreeSet::new();
        let c = [CongruenceConstraint::new(4, [3]).unwrap()];
        assert_eq!(find_prime(&c, 2, &none), Ok(3));
        let excl: BTreeSet<u64> = [3, 7].into();
        assert_eq!(find_prime(&c, 2, &excl), Ok(11));
        assert_eq!(find_prime(&[], 90, &none), Ok(97));
    }

    #[test]
    fn unsatisfiable_and_capped() {
        let none = BTreeSet::new();
        let c = [
            CongruenceConstraint::new(4, [1]).unwrap(),
            CongruenceConstraint::new(8, [3, 7]).unwrap(),
        ];
        assert_eq!(find_prime(&c, 2, &none), Err(ArithError::Unsatisfiable));
        let c = [CongruenceConstraint::new(1000, [1]).unwrap()];
        assert_eq!(
            find_prime_with(&c, 2, &none, 1000),
            Err(ArithError::SearchBoundExceeded { cap: 1000 })
        );
        // consistent but only satisfiable by composites: even residue mod 6
        let c = [CongruenceConstraint::new(6, [4]).unwrap()];
        assert_eq!(
            find_prime_with(&c, 2, &none, 10_000),
            Err(ArithError::SearchBoundExceeded { cap: 10_000 })
        );
    }
}
