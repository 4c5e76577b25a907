// SPDX-License-Identifier: Apache-2.0

//! Diagonal nondegenerate quadratic forms over Q and their local invariants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hilbert::{hilbert_symbol_classes, relevant_places, HilbertValue};
use crate::place::Place;
use crate::rational::Rational;
use crate::square_class::SquareClass;

/// `<a_1, ..., a_n>` with every `a_i` nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    coefficients: Vec<Rational>,
    classes: Vec<SquareClass>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positives: usize,
    pub negatives: usize,
}

/// Invariant table of a form over its relevant place set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormInvariants {
    pub rank: usize,
    pub discriminant: SquareClass,
    pub signature: Signature,
    pub hasse_at: BTreeMap<Place, HilbertValue>,
    pub witt_at: BTreeMap<Place, HilbertValue>,
}

impl QuadraticForm {
    pub fn new(coefficients: Vec<Rational>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::domain("a quadratic form needs at least one coefficient"));
        }
        let classes = coefficients
            .iter()
            .map(|c| {
                SquareClass::of(c)
                    .map_err(|_| Error::domain("degenerate form: zero coefficient"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QuadraticForm {
            coefficients,
            classes,
        })
    }

    pub fn from_integers(coefficients: &[i64]) -> Result<Self> {
        Self::new(coefficients.iter().map(|&c| Rational::integer(c)).collect())
    }

    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coefficient_classes(&self) -> &[SquareClass] {
        &self.classes
    }

    /// `{inf, 2}` together with every prime dividing a numerator or denominator.
    pub fn relevant_places(&self) -> BTreeSet<Place> {
        relevant_places(&self.classes)
    }

    pub fn discriminant(&self) -> SquareClass {
        self.classes
            .iter()
            .fold(SquareClass::one(), |acc, c| acc.mul(c))
    }

    pub fn signature(&self) -> Signature {
        let positives = self.coefficients.iter().filter(|c| c.is_positive()).count();
        Signature {
            positives,
            negatives: self.rank() - positives,
        }
    }

    pub fn is_definite(&self) -> bool {
        let s = self.signature();
        s.positives == 0 || s.negatives == 0
    }

    /// `s(q) = prod_{i<j} (a_i, a_j)_v`.
    pub fn hasse_invariant(&self, v: Place) -> HilbertValue {
        let n = self.classes.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| hilbert_symbol_classes(&self.classes[i], &self.classes[j], v))
            .product()
    }

    /// `c(q)`: the Hasse invariant corrected by rank mod 8.
    pub fn witt_invariant(&self, v: Place) -> HilbertValue {
        let s = self.hasse_invariant(v);
        let minus_one = SquareClass::minus_one();
        let d = self.discriminant();
        let correction = match self.rank() % 8 {
            1 | 2 => HilbertValue::Plus,
            3 | 4 => hilbert_symbol_classes(&minus_one, &d.negate(), v),
            5 | 6 => hilbert_symbol_classes(&minus_one, &minus_one, v),
            _ => hilbert_symbol_classes(&minus_one, &d, v),
        };
        s * correction
    }

    /// Places where `c(q)` is nontrivial; the ramification set of the Witt class.
    pub fn witt_places(&self) -> BTreeSet<Place> {
        self.relevant_places()
            .into_iter()
            .filter(|&v| !self.witt_invariant(v).is_plus())
            .collect()
    }

    pub fn invariants(&self) -> FormInvariants {
        let places = self.relevant_places();
        FormInvariants {
            rank: self.rank(),
            discriminant: self.discriminant(),
            signature: self.signature(),
            hasse_at: places.iter().map(|&v| (v, self.hasse_invariant(v))).collect(),
            witt_at: places.iter().map(|&v| (v, self.witt_invariant(v))).collect(),
        }
    }

    pub fn is_isotropic_local(&self, v: Place) -> bool {
        if v.is_real() {
            return self.rank() >= 2 && !self.is_definite();
        }
        let d = self.discriminant();
        let minus_one = SquareClass::minus_one();
        match self.rank() {
            1 => false,
            2 => d.negate().is_local_square(v),
            3 => hilbert_symbol_classes(&minus_one, &d.negate(), v) == self.hasse_invariant(v),
            4 => {
                !d.is_local_square(v)
                    || self.hasse_invariant(v) == hilbert_symbol_classes(&minus_one, &minus_one, v)
            }
            _ => true,
        }
    }

    /// Hasse-Minkowski: isotropic over Q iff isotropic at every relevant place.
    pub fn is_isotropic(&self) -> bool {
        self.relevant_places()
            .into_iter()
            .all(|v| self.is_isotropic_local(v))
    }

    /// Orthogonal sum `self ⊥ other`.
    pub fn orthogonal_sum(&self, other: &QuadraticForm) -> QuadraticForm {
        let mut coefficients = self.coefficients.clone();
        coefficients.extend_from_slice(&other.coefficients);
        let mut classes = self.classes.clone();
        classes.extend_from_slice(&other.classes);
        QuadraticForm {
            coefficients,
            classes,
        }
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for QuadraticForm {
    type Err = Error;

    /// Comma-separated rationals, e.g. `1,-2,3/5`.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Err(Error::parse(s, "empty form"));
        }
        let tokens: Vec<&str> = s.split(',').collect();
        let coefficients = tokens
            .iter()
            .map(|t| t.parse::<Rational>())
            .collect::<Result<Vec<_>>>()?;
        if let Some((t, _)) = tokens.iter().zip(&coefficients).find(|(_, c)| c.is_zero()) {
            return Err(Error::domain(format!("degenerate form: zero coefficient `{}`", t.trim())));
        }
        QuadraticForm::new(coefficients)
    }
}

impl Serialize for QuadraticForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn discriminant(q: &QuadraticForm) -> SquareClass {
    q.discriminant()
}

pub fn hasse_invariant(q: &QuadraticForm, v: Place) -> HilbertValue {
    q.hasse_invariant(v)
}

pub fn witt_invariant(q: &QuadraticForm, v: Place) -> HilbertValue {
    q.witt_invariant(v)
}

pub fn signature(q: &QuadraticForm) -> Signature {
    q.signature()
}

pub fn is_isotropic_local(q: &QuadraticForm, v: Place) -> bool {
    q.is_isotropic_local(v)
}

pub fn is_isotropic(q: &QuadraticForm) -> bool {
    q.is_isotropic()
}

/// Isometry over Q for forms of rank at most 4.
pub fn equivalent(q: &QuadraticForm, q2: &QuadraticForm) -> Result<bool> {
    for f in [q, q2] {
        if f.rank() > 4 {
            return Err(Error::Unsupported(format!(
                "equivalence is implemented for rank <= 4, got rank {}",
                f.rank()
            )));
        }
    }
    if q.rank() != q2.rank() || q.discriminant() != q2.discriminant() || q.signature() != q2.signature() {
        return Ok(false);
    }
    let places: BTreeSet<Place> = q.relevant_places().union(&q2.relevant_places()).copied().collect();
    Ok(places
        .into_iter()
        .all(|v| q.hasse_invariant(v) == q2.hasse_invariant(v)))
}

/// Similarity (`q2 ≅ c q` for some `c`) for ternary and quaternary forms.
///
/// Rank 3 compares Witt invariants. Rank 4 compares discriminants and isotropy;
/// two anisotropic forms of discriminant `d` are similar iff `c(q) c(q2)` splits
/// over `Q(sqrt d)`, i.e. `d` is a local nonsquare wherever the product is ramified.
pub fn similar(q: &QuadraticForm, q2: &QuadraticForm) -> Result<bool> {
    if q.rank() != q2.rank() || !(3..=4).contains(&q.rank()) {
        return Err(Error::Unsupported(format!(
            "similarity needs equal ranks in {{3, 4}}, got {} and {}",
            q.rank(),
            q2.rank()
        )));
    }
    let places: BTreeSet<Place> = q.relevant_places().union(&q2.relevant_places()).copied().collect();
    let mut differing = places
        .into_iter()
        .filter(|&v| q.witt_invariant(v) != q2.witt_invariant(v));
    if q.rank() == 3 {
        return Ok(differing.next().is_none());
    }
    let d = q.discriminant();
    if d != q2.discriminant() {
        return Ok(false);
    }
    let iso = q.is_isotropic();
    if iso != q2.is_isotropic() {
        return Ok(false);
    }
    if iso {
        return Ok(true);
    }
    Ok(differing.all(|v| !d.is_one() && !d.is_local_square(v)))
}

/// `c q`.
pub fn scale(c: &Rational, q: &QuadraticForm) -> Result<QuadraticForm> {
    if c.is_zero() {
        return Err(Error::domain("cannot scale a form by 0"));
    }
    let coefficients = q
        .coefficients
        .iter()
        .map(|a| a.checked_mul(c))
        .collect::<Result<Vec<_>>>()?;
    QuadraticForm::new(coefficients)
}

/// The 2-fold Pfister form `<<a, b>> = <1, a, b, ab>`.
pub fn pfister2(a: &Rational, b: &Rational) -> Result<QuadraticForm> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::domain("Pfister form slots must be nonzero"));
    }
    QuadraticForm::new(vec![Rational::ONE, *a, *b, a.checked_mul(b)?])
}

/// Reduced norm form `<1, -a> ⊗ <1, -b>` of the quaternion algebra `(a, b)`.
pub fn norm_form(a: &Rational, b: &Rational) -> Result<QuadraticForm> {
    pfister2(&a.neg(), &b.neg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use HilbertValue::{Minus, Plus};

    fn f(s: &str) -> QuadraticForm {
        s.parse().unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::integer(n)
    }

    const P2: Place = Place::Finite(2);

    #[test]
    fn discriminant_examples() {
        assert_eq!(f("1,-1").discriminant().to_integer(), Some(-1));
        assert!(f("1,1,1,1").discriminant().is_one());
        assert_eq!(f("2,3,5").discriminant().to_integer(), Some(30));
        assert_eq!(f("1/2, 2, 3/7").discriminant().to_integer(), Some(21));
    }

    #[test]
    fn hasse_examples() {
        for v in [Place::Real, P2, Place::Finite(3)] {
            assert_eq!(f("-6").hasse_invariant(v), Plus);
        }
        assert_eq!(f("-1,-1").hasse_invariant(P2), Minus);
        assert_eq!(f("2,3").hasse_invariant(Place::Real), Plus);
    }

    #[test]
    fn witt_examples() {
        assert_eq!(f("1,1,1").witt_invariant(P2), Minus);
        assert_eq!(f("1,1,1").witt_invariant(Place::Finite(5)), Plus);
        for v in [Place::Real, P2, Place::Finite(7)] {
            assert_eq!(f("-7").witt_invariant(v), Plus);
        }
    }

    #[test]
    fn signature_examples() {
        assert_eq!(f("1,1,1,1").signature(), Signature { positives: 4, negatives: 0 });
        assert_eq!(f("1,-1").signature(), Signature { positives: 1, negatives: 1 });
        assert_eq!(f("-2,3,-5").signature(), Signature { positives: 1, negatives: 2 });
    }

    #[test]
    fn isotropy_examples() {
        assert!(!f("1,1,1").is_isotropic_local(Place::Real));
        for v in [Place::Real, P2, Place::Finite(3), Place::Finite(7)] {
            assert!(f("1,1,-1").is_isotropic_local(v));
        }
        // x^2 + y^2 + z^2 has no primitive zero mod 8 (squares mod 8 are 0, 1, 4).
        assert!(!f("1,1,1").is_isotropic_local(P2));
        assert!(f("1,1,-1").is_isotropic());
        assert!(!f("1,1,1,1").is_isotropic());
        assert!(!f("1,1,-7").is_isotropic());
        assert!(!f("5").is_isotropic());
        assert!(f("1,-4").is_isotropic());
        assert!(f("1,1,1,1,-1").is_isotropic());
        assert!(!f("1,1,1,1,1").is_isotropic());
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(&f("1,1"), &f("1,1")).unwrap());
        assert!(!equivalent(&f("1,1"), &f("1,-1")).unwrap());
        // (x+y)/2, (x-y)/2 carries x^2 - y^2 to xy; both are hyperbolic planes.
        assert!(equivalent(&f("1,-1"), &f("2,-2")).unwrap());
        assert!(equivalent(&f("1,1"), &f("2,2")).unwrap());
        assert!(!equivalent(&f("1,1"), &f("3,3")).unwrap());
        assert!(matches!(
            equivalent(&f("1,1,1,1,1"), &f("1,1,1,1,1")),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn similarity_examples() {
        let q = f("1,2,-3,5");
        assert!(similar(&q, &scale(&r(7), &q).unwrap()).unwrap());
        assert!(!similar(&f("1,1,1,1"), &f("1,1,1,2")).unwrap());
        assert!(similar(&f("1,1,1,1"), &f("2,2,2,2")).unwrap());
        assert!(!similar(&f("1,1,1,1"), &f("1,1,1,-1")).unwrap());
        assert!(similar(&f("1,1,1"), &f("-1,-1,-1")).unwrap());
        assert!(matches!(similar(&f("1,1"), &f("1,1")), Err(Error::Unsupported(_))));
        assert!(matches!(similar(&f("1,1,1"), &f("1,1,1,1")), Err(Error::Unsupported(_))));
    }

    #[test]
    fn scale_examples() {
        let s = scale(&r(2), &f("1,1")).unwrap();
        assert_eq!(s, f("2,2"));
        assert!(s.discriminant().is_one());
        let s = scale(&r(-1), &f("1,1,1")).unwrap();
        assert_eq!(s, f("-1,-1,-1"));
        assert_eq!(s.discriminant().to_integer(), Some(-1));
        assert!(scale(&Rational::ZERO, &f("1,1")).is_err());
    }

    #[test]
    fn pfister_examples() {
        assert_eq!(pfister2(&r(-1), &r(-1)).unwrap(), f("1,-1,-1,1"));
        assert_eq!(norm_form(&r(-1), &r(-1)).unwrap(), f("1,1,1,1"));
        for (a, b) in [(2, 3), (-5, 7), (6, -1)] {
            assert!(pfister2(&r(a), &r(b)).unwrap().discriminant().is_one());
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("1,x,3".parse::<QuadraticForm>(), Err(Error::Parse { .. })));
        assert!(matches!("1,0,3".parse::<QuadraticForm>(), Err(Error::Domain(_))));
        assert!(matches!("".parse::<QuadraticForm>(), Err(Error::Parse { .. })));
        assert_eq!(f(" 1, -2 , 3/5").to_string(), "1,-2,3/5");
    }

    #[test]
    fn quaternary_pfister_similarity_iff_discriminant_one() {
        let vals = [1i64, -1, 2, -2, 3, -3, 5, -5];
        let pfisters: Vec<QuadraticForm> = vals
            .iter()
            .flat_map(|&a| vals.iter().map(move |&b| pfister2(&r(a), &r(b)).unwrap()))
            .collect();
        for a in vals {
            for b in vals {
                for c in vals {
                    let q = QuadraticForm::from_integers(&[1, a, b, c]).unwrap();
                    let hit = pfisters.iter().any(|p| similar(&q, p).unwrap());
                    assert_eq!(hit, q.discriminant().is_one(), "{q}");
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn coeff() -> impl Strategy<Value = i64> {
            (1i64..60).prop_flat_map(|n| prop_oneof![Just(n), Just(-n)])
        }

        fn form(rank: usize) -> impl Strategy<Value = QuadraticForm> {
            prop::collection::vec(coeff(), rank).prop_map(|cs| QuadraticForm::from_integers(&cs).unwrap())
        }

        proptest! {
            #[test]
            fn witt_is_similarity_invariant(q in prop_oneof![form(3), form(4)], c in coeff(), d in 1i64..30) {
                let c = Rational::new(c, d).unwrap();
                let s = scale(&c, &q).unwrap();
                let places: BTreeSet<Place> = q.relevant_places().union(&s.relevant_places()).copied().collect();
                // Odd rank: c(cq) = c(q). Rank 4: c(cq) = c(q) + (c, d(q)), which
                // vanishes when d(q) = 1 and always over Q(sqrt d(q)).
                let cc = SquareClass::of(&c).unwrap();
                for v in places {
                    let expected = if q.rank() == 3 {
                        q.witt_invariant(v)
                    } else {
                        q.witt_invariant(v) * hilbert_symbol_classes(&cc, &q.discriminant(), v)
                    };
                    prop_assert_eq!(s.witt_invariant(v), expected);
                    if q.discriminant().is_one() {
                        prop_assert_eq!(s.witt_invariant(v), q.witt_invariant(v));
                    }
                }
                prop_assert!(similar(&q, &s).unwrap());
                prop_assert_eq!(q.is_isotropic(), s.is_isotropic());
            }

            #[test]
            fn scaled_discriminant(q in prop_oneof![form(2), form(3), form(4)], c in coeff()) {
                let s = scale(&r(c), &q).unwrap();
                let mut expected = q.discriminant();
                for _ in 0..q.rank() {
                    expected = expected.mul(&SquareClass::of_integer(c).unwrap());
                }
                prop_assert_eq!(s.discriminant(), expected);
            }

            #[test]
            fn equivalence_is_permutation_invariant(q in form(4), k in 0usize..4) {
                let mut cs = q.coefficients().to_vec();
                cs.rotate_left(k);
                let p = QuadraticForm::new(cs).unwrap();
                prop_assert!(equivalent(&q, &p).unwrap());
                prop_assert!(similar(&q, &p).unwrap());
            }
        }
    }
}
