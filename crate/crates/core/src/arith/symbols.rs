use super::{is_prime, ArithError};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Legendre symbol `(a/p)` by Euler's criterion `a^((p-1)/2) mod p`.
pub fn legendre(a: i128, p: u64) -> Result<i8, ArithError> {
    if p == 2 {
        return Err(ArithError::EvenModulus);
    }
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    let r = a.rem_euclid(p as i128) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    })
}

/// Jacobi symbol `(a/n)` for odd positive `n`, by binary quadratic reciprocity.
///
/// Panics if `n` is even or zero.
pub fn jacobi(a: i128, n: u64) -> i8 {
    assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}
