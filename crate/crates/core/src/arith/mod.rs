//! Exact integer arithmetic: factorization by trial division, square classes
//! of `Q^×`, quadratic residue symbols and congruence-constrained prime search.

mod primes;
mod square_class;
mod symbols;

pub use primes::{find_prime, find_prime_with, is_prime, primes_between, CongruenceConstraint};
pub use square_class::{factor, SquareClass};
pub use symbols::{jacobi, legendre, mul_mod, pow_mod};

use thiserror::Error;

/// Default trial-division bound used by [`SquareClass::from_int`].
pub const DEFAULT_FACTOR_BOUND: u64 = 10_000_000;
/// Default upper end of the prime search window used by [`find_prime`].
pub const DEFAULT_SEARCH_CAP: u64 = 1_000_000;
/// Environment variable overriding both bounds.
pub const MAX_PRIME_ENV: &str = "BIQUAD_MAX_PRIME";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("zero has no square class")]
    ZeroInput,
    #[error("cofactor {cofactor} could not be factored below the trial-division bound {bound}")]
    FactorBoundExceeded { cofactor: u128, bound: u64 },
    #[error("the Legendre symbol needs an odd prime modulus, got 2")]
    EvenModulus,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid modulus {0}: must be at least 2")]
    BadModulus(u64),
    #[error("congruence constraint modulo {0} allows no residues")]
    EmptyConstraint(u64),
    #[error("congruence constraints are mutually unsatisfiable")]
    Unsatisfiable,
    #[error("no prime satisfying the constraints below the search cap {cap}")]
    SearchBoundExceeded { cap: u64 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

/// Bounds shared by factorization and prime search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub factor_bound: u64,
    pub search_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            factor_bound: DEFAULT_FACTOR_BOUND,
            search_cap: DEFAULT_SEARCH_CAP,
        }
    }
}

impl Limits {
    /// Defaults, with both bounds replaced by `BIQUAD_MAX_PRIME` when it is set
    /// to a positive integer.
    pub fn from_env() -> Self {
        match std::env::var(MAX_PRIME_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
        {
            Some(n) if n >= 2 => Limits {
                factor_bound: n,
                search_cap: n,
            },
            _ => Limits::default(),
        }
    }
}
