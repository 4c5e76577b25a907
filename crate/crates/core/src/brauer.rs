// SPDX-License-Identifier: Apache-2.0

//! Brauer classes over Q as local invariant vectors, and Severi-Brauer decisions.
//!
//! A class is a finite map `place -> Q/Z` whose entries sum to zero, with the real
//! entry in `{0, 1/2}`. The Brauer kernel of a Severi-Brauer function field is the
//! cyclic group generated by the class of the variety, so isomorphism, isogeny and
//! kernel equality all reduce to comparing generated subgroups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::CheckedAdd;
use serde::{Serialize, Serializer};

use crate::conic::BrauerKernel;
use crate::error::{Error, Result};
use crate::place::Place;
use crate::quadric::{brauer_kernel_quadric, QuadricSurface};
use crate::rational::Rational;

type Inv = Ratio<i128>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BrauerClass {
    invariants: BTreeMap<Place, Inv>,
}

fn reduce_mod_one(x: Inv) -> Inv {
    x - x.floor()
}

impl BrauerClass {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Validates each entry and the sum; nothing is normalized except that
    /// zero entries are dropped.
    pub fn new(entries: impl IntoIterator<Item = (Place, Rational)>) -> Result<Self> {
        let mut invariants = BTreeMap::new();
        let mut sum = Inv::from_integer(0);
        for (place, value) in entries {
            let inv = Inv::new(value.numerator() as i128, value.denominator() as i128);
            if inv < Inv::from_integer(0) || inv >= Inv::from_integer(1) {
                return Err(Error::domain(format!(
                    "local invariant {value} at {place} is outside [0, 1)"
                )));
            }
            if place.is_real() && inv != Inv::from_integer(0) && inv != Inv::new(1, 2) {
                return Err(Error::domain(format!(
                    "real invariant must be 0 or 1/2, got {value}"
                )));
            }
            if invariants.contains_key(&place) {
                return Err(Error::domain(format!("place {place} listed twice")));
            }
            sum = sum
                .checked_add(&inv)
                .ok_or_else(|| Error::domain("overflow summing invariants"))?;
            if inv != Inv::from_integer(0) {
                invariants.insert(place, inv);
            }
        }
        if !sum.is_integer() {
            return Err(Error::domain(format!(
                "local invariants sum to {sum}, not 0 mod 1"
            )));
        }
        Ok(BrauerClass { invariants })
    }

    pub(crate) fn from_quaternion_places(places: &BTreeSet<Place>) -> Self {
        BrauerClass {
            invariants: places.iter().map(|&v| (v, Inv::new(1, 2))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Invariant at `v` as a fraction in `[0, 1)`.
    pub fn invariant(&self, v: Place) -> (i128, i128) {
        self.invariants
            .get(&v)
            .map(|r| (*r.numer(), *r.denom()))
            .unwrap_or((0, 1))
    }

    pub fn places(&self) -> impl Iterator<Item = Place> + '_ {
        self.invariants.keys().copied()
    }

    pub fn add(&self, other: &BrauerClass) -> Result<BrauerClass> {
        let mut invariants = self.invariants.clone();
        for (&v, &x) in &other.invariants {
            let entry = invariants.entry(v).or_insert_with(|| Inv::from_integer(0));
            let s = entry
                .checked_add(&x)
                .ok_or_else(|| Error::domain("overflow adding Brauer classes"))?;
            *entry = reduce_mod_one(s);
        }
        invariants.retain(|_, x| *x != Inv::from_integer(0));
        Ok(BrauerClass { invariants })
    }

    pub fn neg(&self) -> BrauerClass {
        BrauerClass {
            invariants: self
                .invariants
                .iter()
                .map(|(&v, &x)| (v, Inv::from_integer(1) - x))
                .collect(),
        }
    }

    /// `k * self` for any integer `k`.
    pub fn times(&self, k: i64) -> BrauerClass {
        let invariants = self
            .invariants
            .iter()
            .map(|(&v, x)| {
                let den = *x.denom();
                let num = (*x.numer() * (k as i128).rem_euclid(den)).rem_euclid(den);
                (v, Inv::new(num, den))
            })
            .filter(|(_, x)| *x != Inv::from_integer(0))
            .collect();
        BrauerClass { invariants }
    }

    /// Least `n >= 1` with `n * self = 0`: the lcm of the invariant denominators.
    pub fn order(&self) -> u64 {
        self.invariants
            .values()
            .fold(1i128, |acc, x| acc.lcm(x.denom())) as u64
    }
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariants.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .invariants
            .iter()
            .map(|(v, x)| format!("{v}:{}/{}", x.numer(), x.denom()))
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for BrauerClass {
    type Err = Error;

    /// `place:num/den` pairs separated by commas, `inf` for the real place;
    /// `0` is the zero class.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "0" {
            return Ok(BrauerClass::zero());
        }
        if t.is_empty() {
            return Err(Error::parse(s, "empty Brauer class (use `0` for the zero class)"));
        }
        let mut entries = Vec::new();
        for item in t.split(',') {
            let (place, value) = item
                .split_once(':')
                .ok_or_else(|| Error::parse(item, "expected `place:num/den`"))?;
            let place: Place = place.parse().map_err(|_| Error::parse(item, "bad place"))?;
            let value: Rational = value
                .parse()
                .map_err(|_| Error::parse(item, "bad local invariant"))?;
            entries.push((place, value));
        }
        BrauerClass::new(entries)
    }
}

impl Serialize for BrauerClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn class_of_quaternion(b: &crate::conic::QuaternionAlgebra) -> Result<BrauerClass> {
    Ok(BrauerClass::from_quaternion_places(&crate::conic::ramification_set(b)?))
}

pub fn order(x: &BrauerClass) -> u64 {
    x.order()
}

/// `<x> = <y>` in `Br(Q)`.
pub fn same_cyclic_subgroup(x: &BrauerClass, y: &BrauerClass) -> bool {
    let n = x.order();
    if n != y.order() {
        return false;
    }
    (1..=n)
        .filter(|a| a.gcd(&n) == 1)
        .any(|a| x.times(a as i64) == *y)
}

/// A Severi-Brauer variety of the given dimension, known through its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SBVariety {
    dimension: u32,
    class: BrauerClass,
}

impl SBVariety {
    pub fn new(dimension: u32, class: BrauerClass) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::domain("Severi-Brauer dimension must be positive"));
        }
        let degree = dimension as u64 + 1;
        if degree % class.order() != 0 {
            return Err(Error::domain(format!(
                "class {class} has order {} which does not divide the degree {degree}",
                class.order()
            )));
        }
        Ok(SBVariety { dimension, class })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn class(&self) -> &BrauerClass {
        &self.class
    }

    /// The kernel of `Br(Q) -> Br(Q(V))`, generated by the class of `V`.
    pub fn brauer_kernel(&self) -> BrauerKernel {
        if self.class.is_zero() {
            BrauerKernel::Trivial
        } else {
            BrauerKernel::Cyclic(self.class.clone())
        }
    }
}

pub fn sb_fields_isomorphic(v: &SBVariety, v2: &SBVariety) -> Result<bool> {
    if v.dimension != v2.dimension {
        return Err(Error::domain(format!(
            "dimension mismatch: {} vs {}",
            v.dimension, v2.dimension
        )));
    }
    Ok(same_cyclic_subgroup(&v.class, &v2.class))
}

pub const TAG_TORSION: &str = "3-torsion vs 2-torsion";
pub const TAG_RATIONALITY: &str = "rationality";

/// Outcome of comparing a Severi-Brauer surface with a quadric surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SbQuadricVerdict {
    pub isomorphic: bool,
    /// Invariant that tells the two fields apart, when they differ.
    pub separating_invariant: Option<&'static str>,
    pub kernels_over_q_agree: bool,
    /// Set when the fields differ although both kernels over Q are trivial
    /// (trivial class against an anisotropic quadric of discriminant != 1).
    pub kernel_ambiguity: bool,
}

pub fn sb_vs_quadric_decide(v: &SBVariety, q: &QuadricSurface) -> Result<SbQuadricVerdict> {
    if v.dimension != 2 {
        return Err(Error::domain(format!(
            "expected a Severi-Brauer surface, got dimension {}",
            v.dimension
        )));
    }
    let quadric_kernel = brauer_kernel_quadric(q)?;
    if !v.class.is_zero() {
        return Ok(SbQuadricVerdict {
            isomorphic: false,
            separating_invariant: Some(TAG_TORSION),
            kernels_over_q_agree: false,
            kernel_ambiguity: false,
        });
    }
    let rational = q.is_isotropic();
    Ok(SbQuadricVerdict {
        isomorphic: rational,
        separating_invariant: (!rational).then_some(TAG_RATIONALITY),
        kernels_over_q_agree: quadric_kernel.is_trivial(),
        kernel_ambiguity: !rational && quadric_kernel.is_trivial(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::QuaternionAlgebra;

    fn c(s: &str) -> BrauerClass {
        s.parse().unwrap()
    }

    #[test]
    fn quaternion_classes() {
        assert_eq!(class_of_quaternion(&QuaternionAlgebra::hamilton()).unwrap(), c("2:1/2,inf:1/2"));
        assert!(class_of_quaternion(&QuaternionAlgebra::from_integers(1, 1).unwrap()).unwrap().is_zero());
        assert_eq!(
            class_of_quaternion(&QuaternionAlgebra::from_integers(-1, 3).unwrap()).unwrap(),
            c("2:1/2,3:1/2")
        );
    }

    #[test]
    fn orders() {
        assert_eq!(BrauerClass::zero().order(), 1);
        assert_eq!(c("2:1/2,inf:1/2").order(), 2);
        assert_eq!(c("7:1/3,13:2/3").order(), 3);
        assert_eq!(c("3:1/4,5:1/6,7:7/12").order(), 12);
    }

    #[test]
    fn validation() {
        for bad in ["7:1/3", "inf:1/3,2:2/3", "2:1/2,2:1/2", "2:3/2,3:1/2", "2:-1/2,3:1/2"] {
            assert!(matches!(bad.parse::<BrauerClass>(), Err(Error::Domain(_))), "{bad}");
        }
        for bad in ["", "7", "x:1/2", "7:a", "4:1/2,2:1/2"] {
            assert!(matches!(bad.parse::<BrauerClass>(), Err(Error::Parse { .. })), "{bad}");
        }
        assert_eq!(c("7:0,11:0"), BrauerClass::zero());
    }

    #[test]
    fn cyclic_subgroups() {
        let x = c("11:1/5,13:4/5");
        assert_eq!(x.order(), 5);
        assert!(same_cyclic_subgroup(&x, &x.times(2)));
        let y = c("3:1/4,5:3/4");
        assert!(!same_cyclic_subgroup(&y, &y.times(2)));
        assert!(same_cyclic_subgroup(&y, &y.neg()));
        assert!(!same_cyclic_subgroup(&y, &c("3:1/4,7:3/4")));
    }

    #[test]
    fn sb_comparisons() {
        let zero = SBVariety::new(2, BrauerClass::zero()).unwrap();
        assert!(sb_fields_isomorphic(&zero, &zero).unwrap());
        let x = c("7:1/3,13:2/3");
        let v = SBVariety::new(2, x.clone()).unwrap();
        let w = SBVariety::new(2, c("7:2/3,13:1/3")).unwrap();
        assert_eq!(x.times(2), *w.class());
        assert!(sb_fields_isomorphic(&v, &w).unwrap());
        let h1 = SBVariety::new(1, c("2:1/2,inf:1/2")).unwrap();
        let p1 = SBVariety::new(1, BrauerClass::zero()).unwrap();
        assert!(!sb_fields_isomorphic(&h1, &p1).unwrap());
        assert!(sb_fields_isomorphic(&v, &h1).is_err());
        assert!(SBVariety::new(2, c("2:1/2,inf:1/2")).is_err());
        assert!(SBVariety::new(5, c("2:1/2,3:1/3,5:1/6")).is_ok());
    }

    #[test]
    fn sb_against_quadrics() {
        let q = |s: &str| QuadricSurface::new(s.parse().unwrap()).unwrap();
        let p2 = SBVariety::new(2, BrauerClass::zero()).unwrap();
        let v = SBVariety::new(2, c("7:1/3,13:2/3")).unwrap();

        let both_rational = sb_vs_quadric_decide(&p2, &q("1,1,-1,-1")).unwrap();
        assert!(both_rational.isomorphic);
        assert_eq!(both_rational.separating_invariant, None);

        for f in ["1,1,-1,-1", "1,1,1,1", "1,1,1,2"] {
            let verdict = sb_vs_quadric_decide(&v, &q(f)).unwrap();
            assert!(!verdict.isomorphic);
            assert_eq!(verdict.separating_invariant, Some(TAG_TORSION));
        }

        let mismatch = sb_vs_quadric_decide(&p2, &q("1,1,1,2")).unwrap();
        assert!(!mismatch.isomorphic);
        assert_eq!(mismatch.separating_invariant, Some(TAG_RATIONALITY));
        assert!(mismatch.kernel_ambiguity);

        let hamilton_norm = sb_vs_quadric_decide(&p2, &q("1,1,1,1")).unwrap();
        assert!(!hamilton_norm.kernels_over_q_agree);
        assert!(!hamilton_norm.kernel_ambiguity);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Random class of order dividing `n` supported on a few places.
        fn class() -> impl Strategy<Value = BrauerClass> {
            let places = vec![2u64, 3, 5, 7, 11];
            (1u64..=12, prop::sample::subsequence(places, 1..=4), prop::collection::vec(0i64..12, 4))
                .prop_map(|(n, ps, nums)| {
                    let n = n as i64;
                    let mut entries: Vec<(Place, Rational)> = Vec::new();
                    let mut total = 0i64;
                    for (p, k) in ps.iter().zip(&nums).take(ps.len() - 1) {
                        let k = k % n;
                        total += k;
                        entries.push((Place::Finite(*p), Rational::new(k, n).unwrap()));
                    }
                    let last = (-total).rem_euclid(n);
                    entries.push((Place::Finite(*ps.last().unwrap()), Rational::new(last, n).unwrap()));
                    BrauerClass::new(entries).unwrap()
                })
        }

        proptest! {
            #[test]
            fn group_closure(x in class(), y in class(), k in -20i64..20) {
                let s = x.add(&y).unwrap();
                prop_assert!(BrauerClass::new(s.invariants.iter().map(|(&v, r)| (v, Rational::new(*r.numer() as i64, *r.denom() as i64).unwrap()))).is_ok());
                prop_assert!(x.add(&x.neg()).unwrap().is_zero());
                prop_assert_eq!(x.times(k).add(&x.times(-k)).unwrap(), BrauerClass::zero());
                prop_assert_eq!(x.times(x.order() as i64), BrauerClass::zero());
            }

            #[test]
            fn subgroup_relation_is_equivalence(x in class(), y in class(), z in class(), u in 1i64..12) {
                prop_assert!(same_cyclic_subgroup(&x, &x));
                prop_assert_eq!(same_cyclic_subgroup(&x, &y), same_cyclic_subgroup(&y, &x));
                if same_cyclic_subgroup(&x, &y) && same_cyclic_subgroup(&y, &z) {
                    prop_assert!(same_cyclic_subgroup(&x, &z));
                }
                let n = x.order() as i64;
                if num_integer::gcd(u, n) == 1 {
                    prop_assert!(same_cyclic_subgroup(&x, &x.times(u)));
                }
            }

            #[test]
            fn display_round_trips(x in class()) {
                prop_assert_eq!(x.to_string().parse::<BrauerClass>().unwrap(), x);
            }
        }
    }
}
