use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::{is_prime, mul_mod, ArithError, DEFAULT_FACTOR_BOUND};

/// Factors `n > 0` by trial division up to `bound`.
///
/// A cofactor left over after the bound is accepted when it is provably prime
/// (below `bound²`, or prime by deterministic Miller-Rabin in the 64-bit range);
/// anything else is rejected with [`ArithError::FactorBoundExceeded`].
pub fn factor(n: u128, bound: u64) -> Result<Vec<(u64, u32)>, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroInput);
    }
    let mut out = Vec::new();
    let mut m = n;
    let mut push = |p: u64, m: &mut u128| {
        let mut e = 0u32;
        while (*m).is_multiple_of(p as u128) {
            *m /= p as u128;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut m);
    let mut d = 3u64;
    while d <= bound && (d as u128) * (d as u128) <= m {
        if m.is_multiple_of(d as u128) {
            push(d, &mut m);
        }
        d += 2;
    }
    if m > 1 {
        let exhausted = (d as u128) * (d as u128) > m;
        let fits = m <= u64::MAX as u128;
        if exhausted || (fits && is_prime(m as u64)) {
            out.push((m as u64, 1));
        } else {
            return Err(ArithError::FactorBoundExceeded { cofactor: m, bound });
        }
    }
    Ok(out)
}

/// An element of `Q^× / Q^×²`, stored canonically as a sign bit and the
/// strictly increasing list of primes dividing a representative to odd order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquareClass {
    negative: bool,
    primes: Vec<u64>,
}

impl SquareClass {
    pub fn one() -> Self {
        SquareClass {
            negative: false,
            primes: Vec::new(),
        }
    }

    pub fn minus_one() -> Self {
        SquareClass {
            negative: true,
            primes: Vec::new(),
        }
    }

    /// Class of the prime `p`. The caller guarantees primality.
    pub fn prime(p: u64) -> Self {
        debug_assert!(is_prime(p));
        SquareClass {
            negative: false,
            primes: vec![p],
        }
    }

    /// Builds a class from a sign and a set of primes, validating primality.
    pub fn from_parts<I: IntoIterator<Item = u64>>(
        negative: bool,
        primes: I,
    ) -> Result<Self, ArithError> {
        let mut ps: Vec<u64> = primes.into_iter().collect();
        ps.sort_unstable();
        let mut out: Vec<u64> = Vec::with_capacity(ps.len());
        for p in ps {
            if !is_prime(p) {
                return Err(ArithError::NotPrime(p));
            }
            // repeated primes cancel in pairs
            if out.last() == Some(&p) {
                out.pop();
            } else {
                out.push(p);
            }
        }
        Ok(SquareClass {
            negative,
            primes: out,
        })
    }

    pub fn from_int(n: i128) -> Result<Self, ArithError> {
        Self::from_int_with_bound(n, DEFAULT_FACTOR_BOUND)
    }

    pub fn from_int_with_bound(n: i128, bound: u64) -> Result<Self, ArithError> {
        if n == 0 {
            return Err(ArithError::ZeroInput);
        }
        let primes = factor(n.unsigned_abs(), bound)?
            .into_iter()
            .filter(|&(_, e)| e % 2 == 1)
            .map(|(p, _)| p)
            .collect();
        Ok(SquareClass {
            negative: n < 0,
            primes,
        })
    }

    /// Class of `num/den`, which equals the class of `num·den`.
    pub fn from_ratio(num: i128, den: i128, bound: u64) -> Result<Self, ArithError> {
        if den == 0 {
            return Err(ArithError::ZeroInput);
        }
        Ok(&Self::from_int_with_bound(num, bound)? * &Self::from_int_with_bound(den, bound)?)
    }

    /// Class of `n` if it is supported on `primes` (every other prime divides
    /// `n` to even order), and `None` otherwise. Never needs full factoring.
    pub fn from_int_over(n: i128, primes: &[u64]) -> Result<Option<Self>, ArithError> {
        if n == 0 {
            return Err(ArithError::ZeroInput);
        }
        let mut m = n.unsigned_abs();
        let mut odd = Vec::new();
        for &p in primes {
            let mut e = 0u32;
            while m.is_multiple_of(p as u128) {
                m /= p as u128;
                e += 1;
            }
            if e % 2 == 1 {
                odd.push(p);
            }
        }
        let r = m.isqrt();
        if r * r != m {
            return Ok(None);
        }
        Ok(Some(Self::from_parts(n < 0, odd)?))
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.primes.is_empty()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn contains_prime(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    /// The square-free representative, if it fits in an `i128`.
    pub fn representative(&self) -> Option<i128> {
        let m = self.magnitude()?;
        let m = i128::try_from(m).ok()?;
        Some(if self.negative { -m } else { m })
    }

    /// Absolute value of the square-free representative.
    pub fn magnitude(&self) -> Option<u128> {
        self.primes
            .iter()
            .try_fold(1u128, |acc, &p| acc.checked_mul(p as u128))
    }

    /// Residue of the square-free representative modulo `m`, in `[0, m)`.
    pub fn residue(&self, m: u64) -> u64 {
        self.residue_excluding(0, m)
    }

    /// Residue modulo `m` of the representative with the prime `skip` removed.
    pub fn residue_excluding(&self, skip: u64, m: u64) -> u64 {
        let mut r = 1 % m;
        for &p in &self.primes {
            if p != skip {
                r = mul_mod(r, p % m, m);
            }
        }
        if self.negative && r != 0 {
            r = m - r;
        }
        r
    }

    /// Ordering key for choosing representatives: smaller absolute value
    /// first, positive before negative.
    pub fn size_key(&self) -> (u128, bool) {
        (self.magnitude().unwrap_or(u128::MAX), self.negative)
    }
}

impl Mul for &SquareClass {
    type Output = SquareClass;

    /// XOR of signs, symmetric difference of prime sets.
    fn mul(self, rhs: &SquareClass) -> SquareClass {
        let (a, b) = (&self.primes, &rhs.primes);
        let mut primes = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    primes.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    primes.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        primes.extend_from_slice(&a[i..]);
        primes.extend_from_slice(&b[j..]);
        SquareClass {
            negative: self.negative ^ rhs.negative,
            primes,
        }
    }
}

impl Mul for SquareClass {
    type Output = SquareClass;
    fn mul(self, rhs: SquareClass) -> SquareClass {
        &self * &rhs
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.representative() {
            Some(r) => write!(f, "{r}"),
            None => {
                if self.negative {
                    write!(f, "-")?;
                }
                let parts: Vec<String> = self.primes.iter().map(u64::to_string).collect();
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i128) -> SquareClass {
        SquareClass::from_int(n).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(sc(141), SquareClass::from_parts(false, [3, 47]).unwrap());
        assert_eq!(sc(-20), SquareClass::from_parts(true, [5]).unwrap());
        assert_eq!(sc(2501).primes(), &[41, 61]);
        assert!(sc(1).is_one());
        assert!(sc(49).is_one());
        assert!(!sc(-1).is_one());
        assert_eq!(sc(-20).representative(), Some(-5));
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(SquareClass::from_int(0), Err(ArithError::ZeroInput));
    }

    #[test]
    fn bound_exceeded_names_cofactor() {
        // 1000003 * 1000033, both prime, with a bound of 1000
        let n: i128 = 1_000_003 * 1_000_033;
        match SquareClass::from_int_with_bound(n, 1000) {
            Err(ArithError::FactorBoundExceeded { cofactor, bound }) => {
                assert_eq!(cofactor, n as u128);
                assert_eq!(bound, 1000);
            }
            other => panic!("unexpected {other:?}"),
        }
        // a large prime cofactor is fine
        assert_eq!(
            SquareClass::from_int_with_bound(2 * 1_000_003, 1000)
                .unwrap()
                .primes(),
            &[2, 1_000_003]
        );
    }

    #[test]
    fn multiplication_matches_products() {
        assert_eq!(&sc(6) * &sc(10), sc(15));
        assert_eq!(&sc(-7) * &sc(-7), sc(1));
        assert_eq!(&sc(-5) * &sc(7), sc(-35));
    }

    #[test]
    fn residues() {
        assert_eq!(sc(-5).residue(8), 3);
        assert_eq!(sc(35).residue_excluding(5, 8), 7);
        assert_eq!(sc(-1).residue(8), 7);
        assert_eq!(sc(1).residue(8), 1);
    }

    #[test]
    fn from_parts_cancels_and_validates() {
        assert!(SquareClass::from_parts(false, [3, 3]).unwrap().is_one());
        assert_eq!(
            SquareClass::from_parts(false, [4]),
            Err(ArithError::NotPrime(4))
        );
    }
}
