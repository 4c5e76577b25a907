// SPDX-License-Identifier: Apache-2.0

//! Trial-division factorization of machine-size integers.

use crate::error::{Error, Result};

/// Largest accepted input, `2^63 - 1`.
pub const FACTOR_BOUND: u64 = i64::MAX as u64;

/// Prime factors of `n` with multiplicity, in ascending order.
///
/// `factorize(1)` is empty. Zero and values above [`FACTOR_BOUND`] are rejected.
pub fn factorize(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::domain("cannot factor 0"));
    }
    if n > FACTOR_BOUND {
        return Err(Error::domain(format!("{n} exceeds the factorization bound 2^63-1")));
    }
    let mut primes = Vec::new();
    let mut m = n;
    while m % 2 == 0 {
        primes.push(2);
        m /= 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= m {
        while m % d == 0 {
            primes.push(d);
            m /= d;
        }
        d += 2;
    }
    if m > 1 {
        primes.push(m);
    }
    Ok(primes)
}

/// Signed variant used by parsers: accepts any nonzero `i64` and factors its absolute value.
pub fn factorize_signed(n: i64) -> Result<Vec<u64>> {
    if n <= 0 {
        return Err(Error::domain(format!("factorize expects a positive integer, got {n}")));
    }
    factorize(n as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct primes dividing `n`, ascending.
pub(crate) fn prime_support(n: u64) -> Vec<u64> {
    let mut ps = factorize(n.max(1)).unwrap_or_default();
    ps.dedup();
    ps
}
