// SPDX-License-Identifier: Apache-2.0

//! Exact decision procedures for function fields of conics, quadric surfaces and
//! Severi-Brauer varieties over Q, plus period arithmetic for genus-one torsors.
//!
//! Everything is exact: rationals are `i64` fractions, square classes are
//! squarefree integers, local invariants are `±1` or elements of `Q/Z`.

pub mod brauer;
pub mod cli;
pub mod conic;
pub mod error;
pub mod factor;
pub mod genus_one;
pub mod hilbert;
pub mod oracle;
pub mod place;
pub mod qform;
pub mod quadric;
pub mod rational;
pub mod report;
pub mod square_class;

pub use error::{Error, Result};
pub use place::Place;
pub use rational::Rational;
pub use square_class::{is_local_square, square_class, SquareClass};
