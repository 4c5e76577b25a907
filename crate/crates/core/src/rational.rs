// SPDX-License-Identifier: Apache-2.0

//! Exact rationals with `i64` numerator and positive `i64` denominator.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul};

use crate::error::{Error, Result};

/// A reduced fraction `numerator / denominator` with `denominator > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    pub fn new(numerator: i64, denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::domain("zero denominator"));
        }
        if numerator == i64::MIN || denominator == i64::MIN {
            return Err(Error::domain("value out of range"));
        }
        Ok(Rational(Ratio::new(numerator, denominator)))
    }

    pub fn integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numerator(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator() == 0
    }

    pub fn is_positive(&self) -> bool {
        self.numerator() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.numerator() < 0
    }

    pub fn checked_mul(&self, other: &Rational) -> Result<Rational> {
        self.0
            .checked_mul(&other.0)
            .map(Rational)
            .ok_or_else(|| Error::domain(format!("overflow computing {self} * {other}")))
    }

    pub fn checked_add(&self, other: &Rational) -> Result<Rational> {
        self.0
            .checked_add(&other.0)
            .map(Rational)
            .ok_or_else(|| Error::domain(format!("overflow computing {self} + {other}")))
    }

    pub fn neg(&self) -> Rational {
        Rational(-self.0)
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract_floor(&self) -> Rational {
        Rational(self.0 - self.0.floor())
    }

    #[cfg(test)]
    pub(crate) fn ratio(&self) -> Ratio<i64> {
        self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator() == 1 {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

fn parse_int(token: &str, whole: &str) -> Result<i64> {
    let t = token.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(whole, "expected an integer or a fraction p/q"));
    }
    t.parse::<i64>()
        .map_err(|_| Error::parse(whole, "integer out of range"))
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `n`, `-n`, `p/q`; surrounding whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => {
                let d_trim = d.trim();
                if d_trim.starts_with(['-', '+']) {
                    return Err(Error::parse(s, "denominator must be an unsigned integer"));
                }
                (parse_int(n, s)?, parse_int(d_trim, s)?)
            }
            None => (parse_int(s, s)?, 1),
        };
        if den == 0 {
            return Err(Error::parse(s, "zero denominator"));
        }
        Rational::new(num, den).map_err(|e| Error::parse(s, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        let r: Rational = "6/8".parse().unwrap();
        assert_eq!((r.numerator(), r.denominator()), (3, 4));
        let r: Rational = " -3/5 ".parse().unwrap();
        assert_eq!(r.to_string(), "-3/5");
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::integer(7));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x", "1/0", "1/-2", "1.5", "--3", "3/", "99999999999999999999"] {
            assert!(
                matches!(bad.parse::<Rational>(), Err(Error::Parse { .. })),
                "{bad} should fail"
            );
        }
    }

    #[test]
    fn fractional_part() {
        let r = Rational::new(-1, 3).unwrap();
        assert_eq!(r.fract_floor(), Rational::new(2, 3).unwrap());
        assert_eq!(Rational::new(7, 3).unwrap().fract_floor(), Rational::new(1, 3).unwrap());
    }
}
