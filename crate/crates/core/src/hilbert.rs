// SPDX-License-Identifier: Apache-2.0

//! Hilbert symbols `(a, b)_v` over the places of Q.
//!
//! [`hilbert_symbol`] uses the classical closed formulas. [`hilbert_oracle`]
//! decides the same question by searching for a primitive zero of
//! `aX^2 + bY^2 - Z^2` modulo `p^3` (odd `p`) or `2^8`, and shares nothing with
//! the formula beyond square-class reduction of the inputs.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Mul;
use std::rc::Rc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::place::Place;
use crate::rational::Rational;
use crate::square_class::{is_qr_mod, SquareClass};

/// A local sign in `{+1, -1}`: a Hilbert symbol, Hasse invariant or Witt invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HilbertValue {
    Plus,
    Minus,
}

impl HilbertValue {
    pub fn from_bool(plus: bool) -> Self {
        if plus {
            HilbertValue::Plus
        } else {
            HilbertValue::Minus
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            HilbertValue::Plus => 1,
            HilbertValue::Minus => -1,
        }
    }

    /// Additive notation in `Br(Q)[2] = Z/2`: `+1 -> 0`, `-1 -> 1`.
    pub fn to_additive(self) -> u8 {
        match self {
            HilbertValue::Plus => 0,
            HilbertValue::Minus => 1,
        }
    }

    pub fn from_additive(bit: u8) -> Self {
        Self::from_bool(bit % 2 == 0)
    }

    pub fn is_plus(self) -> bool {
        self == HilbertValue::Plus
    }
}

impl Mul for HilbertValue {
    type Output = HilbertValue;

    fn mul(self, rhs: HilbertValue) -> HilbertValue {
        HilbertValue::from_bool(self == rhs)
    }
}

impl std::iter::Product for HilbertValue {
    fn product<I: Iterator<Item = HilbertValue>>(iter: I) -> HilbertValue {
        iter.fold(HilbertValue::Plus, |acc, x| acc * x)
    }
}

impl fmt::Display for HilbertValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HilbertValue::Plus => "+1",
            HilbertValue::Minus => "-1",
        })
    }
}

impl Serialize for HilbertValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i8(self.to_i8())
    }
}

/// `(a, b)_v` on square-class representatives.
pub fn hilbert_symbol_classes(a: &SquareClass, b: &SquareClass, v: Place) -> HilbertValue {
    match v {
        Place::Real => HilbertValue::from_bool(!(a.is_negative() && b.is_negative())),
        Place::Finite(2) => {
            let (alpha, beta) = (a.valuation(2), b.valuation(2));
            let (u, w) = (a.unit_part_mod(2, 8), b.unit_part_mod(2, 8));
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let e = eps(u) * eps(w) + alpha as u64 * omega(w) + beta as u64 * omega(u);
            HilbertValue::from_bool(e % 2 == 0)
        }
        Place::Finite(p) => {
            let (alpha, beta) = (a.valuation(p), b.valuation(p));
            let mut plus = true;
            if alpha == 1 && beta == 1 && (p % 4) == 3 {
                plus = !plus;
            }
            if beta == 1 && !is_qr_mod(a.unit_part_mod(p, p), p) {
                plus = !plus;
            }
            if alpha == 1 && !is_qr_mod(b.unit_part_mod(p, p), p) {
                plus = !plus;
            }
            HilbertValue::from_bool(plus)
        }
    }
}

/// `(a, b)_v`: `+1` iff `z^2 = a x^2 + b y^2` has a nontrivial solution over `Q_v`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: Place) -> Result<HilbertValue> {
    Ok(hilbert_symbol_classes(
        &SquareClass::of(a)?,
        &SquareClass::of(b)?,
        v,
    ))
}

/// The finite set outside of which every symbol built from `classes` is `+1`:
/// the real place, 2, and every prime in any of the classes.
pub fn relevant_places<'a>(classes: impl IntoIterator<Item = &'a SquareClass>) -> BTreeSet<Place> {
    let mut places: BTreeSet<Place> = [Place::Finite(2), Place::Real].into_iter().collect();
    for c in classes {
        places.extend(c.primes().iter().map(|&p| Place::Finite(p)));
    }
    places
}

/// Largest prime for which [`hilbert_oracle`] will run its search.
pub const ORACLE_PRIME_LIMIT: u64 = 1000;

thread_local! {
    static SQUARE_TABLES: RefCell<HashMap<u64, Rc<Vec<bool>>>> = RefCell::new(HashMap::new());
}

fn squares_mod(m: u64) -> Rc<Vec<bool>> {
    SQUARE_TABLES.with(|cell| {
        cell.borrow_mut()
            .entry(m)
            .or_insert_with(|| {
                let mut table = vec![false; m as usize];
                for x in 0..m {
                    table[(x * x % m) as usize] = true;
                }
                Rc::new(table)
            })
            .clone()
    })
}

/// Whether `aX^2 + bY^2 = Z^2` has a solution mod `p^k` with not all of
/// `X, Y, Z` divisible by `p`.
fn has_primitive_zero(a: i64, b: i64, p: u64, k: u32) -> bool {
    let m = p.pow(k);
    let sq = squares_mod(m);
    let (a, b) = (a.rem_euclid(m as i64) as u64, b.rem_euclid(m as i64) as u64);
    let (a, b, m128) = (a as u128, b as u128, m as u128);
    // X a unit: rescale so X = 1.
    for y in 0..=m / 2 {
        let y = y as u128;
        if sq[((a + b * (y * y % m128)) % m128) as usize] {
            return true;
        }
    }
    // p | X, Y a unit: rescale so Y = 1.
    for x in (0..m).step_by(p as usize) {
        let x = x as u128;
        if sq[((a * (x * x % m128) + b) % m128) as usize] {
            return true;
        }
    }
    // p | X and p | Y: then p^2 | aX^2 + bY^2, so Z^2 is not a unit and the
    // triple is not primitive.
    false
}

/// Brute-force Hilbert symbol.
///
/// The moduli `p^3` and `2^8` are large enough that, for squarefree `a`, `b`
/// (valuations 0 or 1), every primitive zero modulo them comes from a genuine
/// `p`-adic zero: a unit solution mod `p` already lifts for odd `p`, and mod 8
/// governs unit squares at 2.
pub fn hilbert_oracle(a: &Rational, b: &Rational, v: Place) -> Result<HilbertValue> {
    let reduce = |r: &Rational| -> Result<i64> {
        SquareClass::of(r)?
            .to_i64()
            .ok_or_else(|| Error::Unsupported(format!("oracle input {r} too large")))
    };
    let (a, b) = (reduce(a)?, reduce(b)?);
    match v {
        // a x^2 + b y^2 takes a positive value unless both are negative.
        Place::Real => Ok(HilbertValue::from_bool(a > 0 || b > 0)),
        Place::Finite(p) if p > ORACLE_PRIME_LIMIT => Err(Error::Unsupported(format!(
            "oracle search at p = {p} exceeds limit {ORACLE_PRIME_LIMIT}"
        ))),
        Place::Finite(2) => Ok(HilbertValue::from_bool(has_primitive_zero(a, b, 2, 8))),
        Place::Finite(p) => Ok(HilbertValue::from_bool(has_primitive_zero(a, b, p, 3))),
    }
}

/// Product formula: the symbols over `{inf, 2} ∪ {primes of a, b}` multiply to `+1`.
///
/// `false` means the local formulas are broken; callers should treat it as a bug.
pub fn reciprocity_check(a: &Rational, b: &Rational) -> Result<bool> {
    let (ca, cb) = (SquareClass::of(a)?, SquareClass::of(b)?);
    let mut places = relevant_places([&ca, &cb]);
    for r in [a, b] {
        for n in [r.numerator().unsigned_abs(), r.denominator() as u64] {
            places.extend(crate::factor::prime_support(n).into_iter().map(Place::Finite));
        }
    }
    let product: HilbertValue = places
        .iter()
        .map(|&v| hilbert_symbol_classes(&ca, &cb, v))
        .product();
    Ok(product.is_plus())
}

/// Places where `(a, b)_v = -1`.
pub fn symbol_support(a: &SquareClass, b: &SquareClass) -> BTreeSet<Place> {
    relevant_places([a, b])
        .into_iter()
        .filter(|&v| !hilbert_symbol_classes(a, b, v).is_plus())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use HilbertValue::{Minus, Plus};

    fn r(n: i64) -> Rational {
        Rational::integer(n)
    }

    #[test]
    fn formula_examples() {
        for v in [Place::Real, Place::Finite(2), Place::Finite(5), Place::Finite(7)] {
            assert_eq!(hilbert_symbol(&r(1), &r(5), v).unwrap(), Plus);
        }
        assert_eq!(hilbert_symbol(&r(-1), &r(-1), Place::Real).unwrap(), Minus);
        assert_eq!(hilbert_symbol(&r(-1), &r(-1), Place::Finite(2)).unwrap(), Minus);
        assert_eq!(hilbert_symbol(&r(2), &r(5), Place::Finite(5)).unwrap(), Minus);
        assert_eq!(hilbert_symbol(&r(-1), &r(3), Place::Finite(3)).unwrap(), Minus);
        assert_eq!(hilbert_symbol(&r(-1), &r(3), Place::Real).unwrap(), Plus);
        assert!(hilbert_symbol(&r(0), &r(3), Place::Real).is_err());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(hilbert_oracle(&r(1), &r(1), Place::Finite(3)).unwrap(), Plus);
        assert_eq!(hilbert_oracle(&r(-1), &r(3), Place::Finite(3)).unwrap(), Minus);
        assert_eq!(hilbert_oracle(&r(-1), &r(3), Place::Real).unwrap(), Plus);
        assert_eq!(hilbert_oracle(&r(-1), &r(-1), Place::Finite(2)).unwrap(), Minus);
        assert_eq!(hilbert_oracle(&r(2), &r(5), Place::Finite(5)).unwrap(), Minus);
        // (2 | 5) = -1 as a Legendre symbol.
        assert!(!(1..5u64).any(|x| x * x % 5 == 2));
    }

    #[test]
    fn oracle_handles_rational_inputs() {
        let a = Rational::new(-4, 9).unwrap();
        let b = Rational::new(3, 50).unwrap();
        for v in [Place::Real, Place::Finite(2), Place::Finite(3), Place::Finite(5)] {
            assert_eq!(hilbert_oracle(&a, &b, v).unwrap(), hilbert_symbol(&a, &b, v).unwrap());
        }
    }

    #[test]
    fn reciprocity_examples() {
        assert!(reciprocity_check(&r(-1), &r(-1)).unwrap());
        assert!(reciprocity_check(&r(1), &r(12345)).unwrap());
        assert!(reciprocity_check(&r(-1), &r(3)).unwrap());
        let hamilton = symbol_support(&SquareClass::minus_one(), &SquareClass::minus_one());
        assert_eq!(hamilton, [Place::Finite(2), Place::Real].into_iter().collect());
        let b = symbol_support(&SquareClass::minus_one(), &SquareClass::of_integer(3).unwrap());
        assert_eq!(b, [Place::Finite(2), Place::Finite(3)].into_iter().collect());
    }

    #[test]
    fn additive_convention() {
        assert_eq!(Plus.to_additive(), 0);
        assert_eq!(Minus.to_additive(), 1);
        assert_eq!(HilbertValue::from_additive(3), Minus);
        assert_eq!(Minus * Minus, Plus);
    }

    #[test]
    fn formula_matches_oracle_small_box() {
        let places: Vec<Place> = std::iter::once(Place::Real)
            .chain([2u64, 3, 5, 7, 11].map(Place::Finite))
            .collect();
        for a in -12..=12i64 {
            for b in -12..=12i64 {
                if a == 0 || b == 0 {
                    continue;
                }
                for &v in &places {
                    assert_eq!(
                        hilbert_symbol(&r(a), &r(b), v).unwrap(),
                        hilbert_oracle(&r(a), &r(b), v).unwrap(),
                        "({a},{b})_{v}"
                    );
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn nonzero() -> impl Strategy<Value = i64> {
            (1i64..10_000).prop_flat_map(|n| prop_oneof![Just(n), Just(-n)])
        }

        fn place() -> impl Strategy<Value = Place> {
            prop_oneof![
                Just(Place::Real),
                prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23, 101]).prop_map(Place::Finite)
            ]
        }

        proptest! {
            #[test]
            fn symmetric(a in nonzero(), b in nonzero(), v in place()) {
                prop_assert_eq!(hilbert_symbol(&r(a), &r(b), v).unwrap(), hilbert_symbol(&r(b), &r(a), v).unwrap());
            }

            #[test]
            fn square_invariant(a in nonzero(), b in nonzero(), t in 1i64..50, v in place()) {
                prop_assert_eq!(hilbert_symbol(&r(a * t * t), &r(b), v).unwrap(), hilbert_symbol(&r(a), &r(b), v).unwrap());
            }

            #[test]
            fn bimultiplicative(a1 in nonzero(), a2 in nonzero(), b in nonzero(), v in place()) {
                let lhs = hilbert_symbol(&r(a1 * a2), &r(b), v).unwrap();
                let rhs = hilbert_symbol(&r(a1), &r(b), v).unwrap() * hilbert_symbol(&r(a2), &r(b), v).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn product_formula(a in nonzero(), b in nonzero()) {
                prop_assert!(reciprocity_check(&r(a), &r(b)).unwrap());
            }

            #[test]
            fn a_and_minus_a(a in nonzero(), v in place()) {
                prop_assert_eq!(hilbert_symbol(&r(a), &r(-a), v).unwrap(), Plus);
            }
        }
    }
}
