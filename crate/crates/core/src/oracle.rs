// SPDX-License-Identifier: Apache-2.0

//! Brute-force verification oracles.
//!
//! Nothing here is used by the decision procedures; these searches exist so
//! tests can check the closed-form criteria against an independent route.

use num_integer::{Integer, Roots};

use crate::error::{Error, Result};
use crate::place::Place;
use crate::qform::{equivalent, scale, QuadraticForm};
use crate::rational::Rational;

/// Default half-width of integer search boxes.
pub const DEFAULT_SEARCH_BOUND: i64 = 200;

/// Search bound, overridable through `WITT_KERNEL_SEARCH_BOUND`.
pub fn search_bound() -> i64 {
    std::env::var("WITT_KERNEL_SEARCH_BOUND")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .filter(|&b| b > 0)
        .unwrap_or(DEFAULT_SEARCH_BOUND)
}

/// Integer coefficients proportional to `q`.
fn integral_coefficients(q: &QuadraticForm) -> Result<Vec<i128>> {
    let l = q
        .coefficients()
        .iter()
        .fold(1i128, |acc, c| acc.lcm(&(c.denominator() as i128)));
    q.coefficients()
        .iter()
        .map(|c| {
            (c.numerator() as i128)
                .checked_mul(l / c.denominator() as i128)
                .ok_or_else(|| Error::domain("coefficients too large for search"))
        })
        .collect()
}

/// A nonzero integer zero of a ternary form with `|x|, |y|, |z| <= bound`.
pub fn ternary_integer_zero(q: &QuadraticForm, bound: i64) -> Result<Option<[i64; 3]>> {
    if q.rank() != 3 {
        return Err(Error::Unsupported("integer zero search expects a ternary form".into()));
    }
    let c = integral_coefficients(q)?;
    let (a, b, cz) = (c[0], c[1], c[2]);
    let bound_sq = (bound as i128) * (bound as i128);
    for x in 0..=bound as i128 {
        let ax = a * x * x;
        let y_start = if x == 0 { 1 } else { -(bound as i128) };
        for y in y_start..=bound as i128 {
            let rest = -(ax + b * y * y);
            if rest % cz != 0 {
                continue;
            }
            let z2 = rest / cz;
            if z2 < 0 || z2 > bound_sq {
                continue;
            }
            let z = z2.sqrt();
            if z * z == z2 {
                return Ok(Some([x as i64, y as i64, z as i64]));
            }
        }
    }
    Ok(None)
}

const AUXILIARY_PRIME_LIMIT: u64 = 100;

/// Search for `c` with `c q ≅ q2` among `±(product of a subset of the joint
/// relevant primes)`, optionally times one auxiliary prime below 100 outside
/// that set. Returns the first scalar found.
pub fn similarity_scalar_search(q: &QuadraticForm, q2: &QuadraticForm) -> Result<Option<Rational>> {
    // Scaling fixes rank, and fixes the discriminant in even rank.
    if q.rank() != q2.rank() || (q.rank() % 2 == 0 && q.discriminant() != q2.discriminant()) {
        return Ok(None);
    }
    let mut primes: Vec<u64> = q
        .relevant_places()
        .union(&q2.relevant_places())
        .filter_map(Place::prime)
        .collect();
    primes.sort_unstable();
    let auxiliary: Vec<u64> = (2..AUXILIARY_PRIME_LIMIT)
        .filter(|&p| crate::factor::is_prime(p) && !primes.contains(&p))
        .collect();
    let mut extra = vec![1u64];
    extra.extend(auxiliary);
    for &aux in &extra {
        for mask in 0u32..(1 << primes.len()) {
            let mut c: i64 = aux as i64;
            for (i, &p) in primes.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    c = c
                        .checked_mul(p as i64)
                        .ok_or_else(|| Error::domain("scalar search overflow"))?;
                }
            }
            for sign in [1i64, -1] {
                let scalar = Rational::integer(sign * c);
                if equivalent(&scale(&scalar, q)?, q2)? {
                    return Ok(Some(scalar));
                }
            }
        }
    }
    Ok(None)
}
