//! Local Hilbert symbols over `Q` and 2-torsion Brauer classes stored as
//! their (finite, even) sets of ramified places.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{is_prime, legendre, SquareClass};
use crate::f2::{Basis, F2Error, F2Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error("ramification set {0:?} has odd cardinality, violating Hilbert reciprocity")]
    ReciprocityViolation(Vec<Place>),
    #[error("oracle modulus {modulus} exceeds the enumeration budget {budget}")]
    OracleScaleExceeded { modulus: u64, budget: u64 },
    #[error("conic oracle inputs must be nonzero")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse place {0:?}")]
    BadPlace(String),
}

/// A place of `Q`, ordered `∞ < 2 < 3 < 5 < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Place {
    Infinity,
    Two,
    Odd(u64),
}

impl Place {
    /// The finite place of the prime `p`.
    pub fn prime(p: u64) -> Place {
        if p == 2 {
            Place::Two
        } else {
            Place::Odd(p)
        }
    }

    pub fn prime_value(self) -> Option<u64> {
        match self {
            Place::Infinity => None,
            Place::Two => Some(2),
            Place::Odd(p) => Some(p),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Two => write!(f, "2"),
            Place::Odd(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = LocalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "oo" | "∞" => Ok(Place::Infinity),
            t => match t.parse::<u64>() {
                Ok(p) if is_prime(p) => Ok(Place::prime(p)),
                _ => Err(LocalError::BadPlace(s.to_string())),
            },
        }
    }
}

impl From<Place> for String {
    fn from(p: Place) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Place {
    type Error = LocalError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Places where a symbol `(a, b)` can be nontrivial: `{∞, 2} ∪ primes(a) ∪ primes(b)`.
pub fn relevant_places<'a, I: IntoIterator<Item = &'a SquareClass>>(classes: I) -> BTreeSet<Place> {
    let mut out: BTreeSet<Place> = [Place::Infinity, Place::Two].into();
    for c in classes {
        out.extend(c.primes().iter().map(|&p| Place::prime(p)));
    }
    out
}

fn eps2(u: u64) -> u32 {
    // (u - 1)/2 mod 2 for odd u, from u mod 4
    u32::from(u % 4 == 3)
}

fn omega2(u: u64) -> u32 {
    // (u² - 1)/8 mod 2 for odd u, from u mod 8
    u32::from(u % 8 == 3 || u % 8 == 5)
}

/// The local Hilbert symbol `(a, b)_v ∈ {+1, −1}`.
pub fn hilbert_symbol(a: &SquareClass, b: &SquareClass, v: Place) -> i8 {
    match v {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Two => {
            let alpha = u32::from(a.contains_prime(2));
            let beta = u32::from(b.contains_prime(2));
            let u = a.residue_excluding(2, 8);
            let w = b.residue_excluding(2, 8);
            let e = eps2(u) * eps2(w) + alpha * omega2(w) + beta * omega2(u);
            if e.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        Place::Odd(p) => {
            let alpha = a.contains_prime(p);
            let beta = b.contains_prime(p);
            let mut s: i8 = 1;
            if alpha && beta && p % 4 == 3 {
                s = -s;
            }
            if beta {
                s *= unit_legendre(a, p);
            }
            if alpha {
                s *= unit_legendre(b, p);
            }
            s
        }
    }
}

fn unit_legendre(c: &SquareClass, p: u64) -> i8 {
    let r = c.residue_excluding(p, p);
    legendre(r as i128, p).expect("odd prime place")
}

/// A class in `Br(Q)[2]`, identified with its set of ramified places.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BrauerClass {
    ramified: BTreeSet<Place>,
}

impl BrauerClass {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Rejects sets of odd cardinality, which no class of `Br(Q)` has.
    pub fn from_places<I: IntoIterator<Item = Place>>(places: I) -> Result<Self, LocalError> {
        let ramified: BTreeSet<Place> = places.into_iter().collect();
        if ramified.len() % 2 == 1 {
            return Err(LocalError::ReciprocityViolation(
                ramified.into_iter().collect(),
            ));
        }
        Ok(BrauerClass { ramified })
    }

    pub fn is_trivial(&self) -> bool {
        self.ramified.is_empty()
    }

    pub fn ramified(&self) -> &BTreeSet<Place> {
        &self.ramified
    }

    pub fn is_ramified_at(&self, v: Place) -> bool {
        self.ramified.contains(&v)
    }

    /// Local invariant as a symbol value: `-1` at ramified places.
    pub fn local_symbol(&self, v: Place) -> i8 {
        if self.is_ramified_at(v) {
            -1
        } else {
            1
        }
    }

    /// Coordinates over a place-labelled basis, which must cover every ramified place.
    pub fn to_vector(&self, basis: &Basis<Place>) -> Result<F2Vector<Place>, F2Error> {
        F2Vector::from_labels(basis, self.ramified.iter())
    }

    pub fn from_vector(v: &F2Vector<Place>) -> Result<Self, LocalError> {
        Self::from_places(v.support())
    }
}

impl AddAssign<&BrauerClass> for BrauerClass {
    fn add_assign(&mut self, rhs: &BrauerClass) {
        for v in &rhs.ramified {
            if !self.ramified.remove(v) {
                self.ramified.insert(*v);
            }
        }
    }
}

impl Add for &BrauerClass {
    type Output = BrauerClass;
    fn add(self, rhs: &BrauerClass) -> BrauerClass {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BrauerClass {
    type Output = BrauerClass;
    fn add(mut self, rhs: BrauerClass) -> BrauerClass {
        self += &rhs;
        self
    }
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ramified.iter().map(Place::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Class of the quaternion algebra `(a, b)`.
pub fn quaternion_class(a: &SquareClass, b: &SquareClass) -> Result<BrauerClass, LocalError> {
    let ramified: BTreeSet<Place> = relevant_places([a, b])
        .into_iter()
        .filter(|&v| hilbert_symbol(a, b, v) == -1)
        .collect();
    if ramified.len() % 2 == 1 {
        return Err(LocalError::ReciprocityViolation(
            ramified.into_iter().collect(),
        ));
    }
    Ok(BrauerClass { ramified })
}

/// Default table size limit for [`conic_oracle`].
pub const ORACLE_BUDGET: u64 = 1 << 24;

/// Brute-force Hilbert symbol: `+1` iff `z² ≡ a x² + b y² (mod p^k)` has a
/// solution with `x, y, z` not all divisible by `p`, where `k = 3` for odd `p`
/// and `k = 5` for `p = 2`.
pub fn conic_oracle(a: i64, b: i64, p: u64) -> Result<i8, LocalError> {
    conic_oracle_with_budget(a, b, p, ORACLE_BUDGET)
}

pub fn conic_oracle_with_budget(a: i64, b: i64, p: u64, budget: u64) -> Result<i8, LocalError> {
    if a == 0 || b == 0 {
        return Err(LocalError::ZeroInput);
    }
    if !is_prime(p) {
        return Err(LocalError::NotPrime(p));
    }
    let k = if p == 2 { 5 } else { 3 };
    let m = p
        .checked_pow(k)
        .filter(|&m| m <= budget)
        .ok_or(LocalError::OracleScaleExceeded {
            modulus: p.saturating_pow(k),
            budget,
        })?;
    let strip = |mut x: i64| {
        let pp = (p * p) as i64;
        while x % pp == 0 {
            x /= pp;
        }
        x
    };
    let (a, b) = (strip(a), strip(b));
    let mi = m as i128;
    let a = (a as i128).rem_euclid(mi) as u64;
    let b = (b as i128).rem_euclid(mi) as u64;
    let mm = |x: u64, y: u64| ((x as u128 * y as u128) % m as u128) as u64;

    let mut is_square = vec![false; m as usize];
    for z in 0..m {
        is_square[mm(z, z) as usize] = true;
    }
    // x a unit: scale to x = 1.
    for y in 0..m {
        if is_square[((a + mm(b, mm(y, y))) % m) as usize] {
            return Ok(1);
        }
    }
    // x ≡ 0, y a unit: scale to y = 1.
    for x in (0..m).step_by(p as usize) {
        if is_square[((mm(a, mm(x, x)) + b) % m) as usize] {
            return Ok(1);
        }
    }
    // x ≡ y ≡ 0 forces z to be a unit, but then z² ≡ a x² + b y² ≡ 0 (mod p²).
    Ok(-1)
}
