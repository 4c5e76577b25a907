// SPDX-License-Identifier: Apache-2.0

//! Quaternion algebras over Q, their conics, and Brauer kernels of genus-zero curves.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::brauer::BrauerClass;
use crate::error::{Error, Result};
use crate::hilbert::symbol_support;
use crate::place::Place;
use crate::qform::QuadraticForm;
use crate::rational::Rational;
use crate::square_class::SquareClass;

/// The symbol `(a, b)_Q`, kept as a pair of square classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuaternionAlgebra {
    pub a: SquareClass,
    pub b: SquareClass,
}

/// A class in `Br(Q)[2]`, identified by its (even, finite) ramification set.
///
/// Two quaternion algebras are isomorphic iff they have the same class, so this
/// is the canonical representative used in kernels and witnesses.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuaternionClass {
    ramified: BTreeSet<Place>,
}

/// Genus-zero curve `aX^2 + bY^2 - abZ^2 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenusZeroCurve {
    pub algebra: QuaternionAlgebra,
}

/// Kernel of `Br(Q) -> Br(Q(V))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BrauerKernel {
    Trivial,
    Order2(QuaternionClass),
    Cyclic(BrauerClass),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConicComparison {
    Isomorphic,
    NotIsogenous,
}

fn to_rational(c: &SquareClass) -> Result<Rational> {
    c.to_i64()
        .map(Rational::integer)
        .ok_or_else(|| Error::domain(format!("square class {c} does not fit in 64 bits")))
}

impl QuaternionClass {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn from_places(ramified: BTreeSet<Place>) -> Result<Self> {
        if ramified.len() % 2 == 1 {
            return Err(Error::domain(format!(
                "a quaternion class ramifies at an even number of places, got {}",
                ramified.len()
            )));
        }
        Ok(QuaternionClass { ramified })
    }

    pub fn ramification(&self) -> &BTreeSet<Place> {
        &self.ramified
    }

    pub fn is_split(&self) -> bool {
        self.ramified.is_empty()
    }

    /// Sum in `Br(Q)[2]`.
    pub fn mul(&self, other: &QuaternionClass) -> QuaternionClass {
        QuaternionClass {
            ramified: self
                .ramified
                .symmetric_difference(&other.ramified)
                .copied()
                .collect(),
        }
    }

    /// Whether the class dies in `Br(Q(sqrt e))`: every ramified place must
    /// have no split extension there, i.e. `e` is not a local square.
    pub fn splits_over(&self, e: &SquareClass) -> bool {
        if e.is_one() {
            return self.is_split();
        }
        self.ramified.iter().all(|&v| !e.is_local_square(v))
    }

    pub fn to_brauer_class(&self) -> BrauerClass {
        BrauerClass::from_quaternion_places(&self.ramified)
    }
}

impl fmt::Display for QuaternionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ramified.iter().map(Place::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for QuaternionClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.ramified.iter())
    }
}

impl QuaternionAlgebra {
    pub fn new(a: &Rational, b: &Rational) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::domain("quaternion symbol entries must be nonzero"));
        }
        Ok(QuaternionAlgebra {
            a: SquareClass::of(a)?,
            b: SquareClass::of(b)?,
        })
    }

    pub fn from_integers(a: i64, b: i64) -> Result<Self> {
        Self::new(&Rational::integer(a), &Rational::integer(b))
    }

    pub fn hamilton() -> Self {
        QuaternionAlgebra {
            a: SquareClass::minus_one(),
            b: SquareClass::minus_one(),
        }
    }

    pub fn class(&self) -> Result<QuaternionClass> {
        Ok(QuaternionClass {
            ramified: ramification_set(self)?,
        })
    }
}

impl fmt::Display for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl Serialize for QuaternionAlgebra {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl GenusZeroCurve {
    pub fn new(algebra: QuaternionAlgebra) -> Self {
        GenusZeroCurve { algebra }
    }
}

/// `<a, b, -ab>`, the defining ternary of the conic.
pub fn conic_form(b: &QuaternionAlgebra) -> Result<QuadraticForm> {
    let ab = b.a.mul(&b.b);
    QuadraticForm::new(vec![to_rational(&b.a)?, to_rational(&b.b)?, to_rational(&ab.negate())?])
}

/// The discriminant-1 companion `q_B = <-a, -b, ab>`.
pub fn normalized_form(b: &QuaternionAlgebra) -> Result<QuadraticForm> {
    let ab = b.a.mul(&b.b);
    QuadraticForm::new(vec![
        to_rational(&b.a.negate())?,
        to_rational(&b.b.negate())?,
        to_rational(&ab)?,
    ])
}

/// Places `v` with `(a, b)_v = -1`.
pub fn ramification_set(b: &QuaternionAlgebra) -> Result<BTreeSet<Place>> {
    let ramified = symbol_support(&b.a, &b.b);
    if ramified.len() % 2 == 1 {
        return Err(Error::consistency(format!(
            "ramification set of {b} has odd size {}",
            ramified.len()
        )));
    }
    Ok(ramified)
}

/// Split iff the conic has a rational point iff nothing ramifies; both are checked.
pub fn is_split(b: &QuaternionAlgebra) -> Result<bool> {
    let by_form = conic_form(b)?.is_isotropic();
    let by_places = ramification_set(b)?.is_empty();
    if by_form != by_places {
        return Err(Error::consistency(format!(
            "{b}: conic isotropy says {by_form}, ramification says {by_places}"
        )));
    }
    Ok(by_form)
}

pub fn brauer_kernel_conic(c: &GenusZeroCurve) -> Result<BrauerKernel> {
    if is_split(&c.algebra)? {
        Ok(BrauerKernel::Trivial)
    } else {
        Ok(BrauerKernel::Order2(c.algebra.class()?))
    }
}

/// Genus-zero function fields are either isomorphic or not isogenous at all.
pub fn conic_fields_compare(c: &GenusZeroCurve, c2: &GenusZeroCurve) -> Result<ConicComparison> {
    if ramification_set(&c.algebra)? == ramification_set(&c2.algebra)? {
        Ok(ConicComparison::Isomorphic)
    } else {
        Ok(ConicComparison::NotIsogenous)
    }
}

pub fn splits_over(b: &QuaternionAlgebra, e: &SquareClass) -> Result<bool> {
    if e.is_one() {
        return is_split(b);
    }
    Ok(b.class()?.splits_over(e))
}

impl BrauerKernel {
    pub fn is_trivial(&self) -> bool {
        matches!(self, BrauerKernel::Trivial)
    }

    pub fn name(&self) -> &'static str {
        match self {
            BrauerKernel::Trivial => "Trivial",
            BrauerKernel::Order2(_) => "Order2",
            BrauerKernel::Cyclic(_) => "Cyclic",
        }
    }
}

impl fmt::Display for BrauerKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrauerKernel::Trivial => f.write_str("Trivial"),
            BrauerKernel::Order2(c) => write!(f, "Order2 ramified at {c}"),
            BrauerKernel::Cyclic(c) => write!(f, "Cyclic generated by {c}"),
        }
    }
}

impl Serialize for BrauerKernel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
