// SPDX-License-Identifier: Apache-2.0

//! Torsor classes inside a cyclic subgroup of a Weil-Chatelet group.
//!
//! A class `[C]` is modeled as a residue `a` modulo the order `m` of an ambient
//! cyclic group. `[C]` and `-[C]` give isomorphic curves, so residues are
//! reported in the fundamental domain `[0, m/2]`.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CyclicTorsorModel {
    modulus: u64,
    residue: u64,
}

impl CyclicTorsorModel {
    pub fn new(modulus: u64, residue: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::domain("modulus must be at least 1"));
        }
        if residue >= modulus {
            return Err(Error::domain(format!(
                "residue {residue} is not in [0, {modulus})"
            )));
        }
        Ok(CyclicTorsorModel { modulus, residue })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    /// Order of `[C]`.
    pub fn period(&self) -> u64 {
        self.modulus / self.residue.gcd(&self.modulus)
    }

    fn canonical(&self, x: u64) -> u64 {
        let x = x % self.modulus;
        x.min(self.modulus - x)
    }
}

pub fn period(t: &CyclicTorsorModel) -> u64 {
    t.period()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoverVerdict {
    pub exists: bool,
    /// Degree `n^2` of the cover when it exists.
    pub degree: u64,
}

/// Degree-`n^2` etale cover `src -> dst` exists iff `[dst] = ±n[src]`.
pub fn etale_cover_exists(src: &CyclicTorsorModel, dst: &CyclicTorsorModel, n: u64) -> Result<CoverVerdict> {
    if src.modulus != dst.modulus {
        return Err(Error::domain(format!(
            "torsors live in different cyclic groups (moduli {} and {})",
            src.modulus, dst.modulus
        )));
    }
    if n == 0 {
        return Err(Error::domain("cover multiplier must be positive"));
    }
    let m = src.modulus as u128;
    let image = (n as u128 % m) * src.residue as u128 % m;
    let target = dst.residue as u128;
    let exists = image == target || (m - image) % m == target;
    Ok(CoverVerdict {
        exists,
        degree: n.saturating_mul(n),
    })
}

/// Classes `u[C]` with `u` a unit mod the period, up to sign.
pub fn isogeny_orbit(t: &CyclicTorsorModel) -> BTreeSet<u64> {
    let n = t.period();
    (1..=n)
        .filter(|u| u.gcd(&n) == 1)
        .map(|u| t.canonical(((u as u128 * t.residue as u128) % t.modulus as u128) as u64))
        .collect()
}

/// Euler's totient by trial division.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `#(Z/nZ)^x / ±1`.
pub fn n_c(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("period must be positive"));
    }
    let phi = euler_phi(n);
    Ok(if n <= 2 { phi } else { phi / 2 })
}

/// Periods for which `N_C = 1`.
pub const GATE_PERIODS: [u64; 5] = [1, 2, 3, 4, 6];

/// Whether the elementary-equivalence rigidity result applies: the period is
/// one of [`GATE_PERIODS`] and the caller vouches for both Jacobian hypotheses.
pub fn theorem10_gate(period: u64, jacobian_non_cm: bool, jacobian_isolated_or_mw_finite: bool) -> bool {
    GATE_PERIODS.contains(&period) && jacobian_non_cm && jacobian_isolated_or_mw_finite
}
