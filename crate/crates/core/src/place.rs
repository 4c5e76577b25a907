// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::factor::is_prime;

/// A place of Q. Ordered `2 < 3 < 5 < ... < inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(u64),
    Real,
}

impl Place {
    pub fn finite(p: u64) -> Result<Place> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        Ok(Place::Finite(p))
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Place::Finite(p) => Some(*p),
            Place::Real => None,
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Place::Real)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Real => f.write_str("inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Place> {
        let t = s.trim();
        if t == "inf" || t == "oo" || t == "∞" {
            return Ok(Place::Real);
        }
        let p: u64 = t
            .parse()
            .map_err(|_| Error::parse(s, "expected a prime or `inf`"))?;
        if !is_prime(p) {
            return Err(Error::parse(s, "not a prime"));
        }
        Ok(Place::Finite(p))
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
