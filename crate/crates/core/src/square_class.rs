// SPDX-License-Identifier: Apache-2.0

//! Square classes `Q^x / Q^x2` and local squareness.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::factor::factorize;
use crate::place::Place;
use crate::rational::Rational;

/// The squarefree integer `sign * prod(primes)` representing a class in `Q^x / Q^x2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareClass {
    negative: bool,
    primes: Vec<u64>,
}

pub(crate) fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Euler's criterion for a unit `u` modulo an odd prime `p`.
pub(crate) fn is_qr_mod(u: u64, p: u64) -> bool {
    debug_assert!(u % p != 0);
    mod_pow(u, (p - 1) / 2, p) == 1
}

/// Odd primes and 2 with odd exponent in `n`.
fn odd_exponent_primes(n: u64) -> Result<Vec<u64>> {
    let fs = factorize(n)?;
    let mut out = Vec::new();
    let mut i = 0;
    while i < fs.len() {
        let mut j = i;
        while j < fs.len() && fs[j] == fs[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(fs[i]);
        }
        i = j;
    }
    Ok(out)
}

fn sym_diff(a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
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

    pub fn of(r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::domain("square class of 0 is undefined"));
        }
        let num = odd_exponent_primes(r.numerator().unsigned_abs())?;
        let den = odd_exponent_primes(r.denominator() as u64)?;
        Ok(SquareClass {
            negative: r.is_negative(),
            primes: sym_diff(&num, &den),
        })
    }

    pub fn of_integer(n: i64) -> Result<Self> {
        Self::of(&Rational::integer(n))
    }

    /// Builds a class from a sign and a set of primes; duplicates cancel.
    pub fn from_parts(negative: bool, primes: &[u64]) -> Result<Self> {
        let mut acc = SquareClass {
            negative,
            primes: Vec::new(),
        };
        for &p in primes {
            if !crate::factor::is_prime(p) {
                return Err(Error::domain(format!("{p} is not prime")));
            }
            acc = acc.mul(&SquareClass {
                negative: false,
                primes: vec![p],
            });
        }
        Ok(acc)
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.primes.is_empty()
    }

    pub fn contains_prime(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        SquareClass {
            negative: self.negative != other.negative,
            primes: sym_diff(&self.primes, &other.primes),
        }
    }

    pub fn negate(&self) -> SquareClass {
        SquareClass {
            negative: !self.negative,
            primes: self.primes.clone(),
        }
    }

    /// The squarefree integer, if it fits.
    pub fn to_integer(&self) -> Option<i128> {
        let mut acc: i128 = 1;
        for &p in &self.primes {
            acc = acc.checked_mul(p as i128)?;
        }
        Some(if self.negative { -acc } else { acc })
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|v| i64::try_from(v).ok())
    }

    /// `(self / p^{v_p(self)}) mod modulus`, as a residue in `[0, modulus)`.
    pub(crate) fn unit_part_mod(&self, p: u64, modulus: u64) -> u64 {
        let m = modulus as u128;
        let mut acc: u128 = 1 % m;
        for &q in &self.primes {
            if q != p {
                acc = acc * (q as u128 % m) % m;
            }
        }
        if self.negative {
            acc = (m - acc) % m;
        }
        acc as u64
    }

    /// `p`-adic valuation of the squarefree representative (0 or 1).
    pub(crate) fn valuation(&self, p: u64) -> u32 {
        u32::from(self.contains_prime(p))
    }

    pub fn is_local_square(&self, v: Place) -> bool {
        match v {
            Place::Real => !self.negative,
            Place::Finite(p) => {
                if self.contains_prime(p) {
                    return false;
                }
                if p == 2 {
                    self.unit_part_mod(2, 8) == 1
                } else {
                    is_qr_mod(self.unit_part_mod(p, p), p)
                }
            }
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_integer() {
            Some(n) => write!(f, "{n}"),
            None => {
                if self.negative {
                    f.write_str("-")?;
                }
                let parts: Vec<String> = self.primes.iter().map(u64::to_string).collect();
                f.write_str(&parts.join("*"))
            }
        }
    }
}

impl FromStr for SquareClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r: Rational = s.parse()?;
        if r.is_zero() {
            return Err(Error::parse(s, "zero has no square class"));
        }
        SquareClass::of(&r)
    }
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Square class of a nonzero rational.
pub fn square_class(r: &Rational) -> Result<SquareClass> {
    SquareClass::of(r)
}

/// Whether `r` is a square in the completion `Q_v`.
///
/// Computed from the valuation and unit part of `r` directly, without going
/// through [`SquareClass`].
pub fn is_local_square(r: &Rational, v: Place) -> Result<bool> {
    if r.is_zero() {
        return Err(Error::domain("0 is not in Q_v^x"));
    }
    let p = match v {
        Place::Real => return Ok(r.is_positive()),
        Place::Finite(p) => p,
    };
    let split = |mut n: u64| {
        let mut k = 0u32;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        (k, n)
    };
    let (kn, un) = split(r.numerator().unsigned_abs());
    let (kd, ud) = split(r.denominator() as u64);
    if (kn + kd) % 2 == 1 {
        return Ok(false);
    }
    // 1/ud has the same square class as ud.
    let modulus = if p == 2 { 8 } else { p };
    let m = modulus as u128;
    let mut unit = (un as u128 % m) * (ud as u128 % m) % m;
    if r.is_negative() {
        unit = (m - unit) % m;
    }
    Ok(if p == 2 {
        unit == 1
    } else {
        is_qr_mod(unit as u64, p)
    })
}
