//! Signed Gauss words and their finite type invariants.
//!
//! A signed Gauss word is a sequence in which every letter occurs exactly
//! twice, each letter carrying a sign (and optionally a singular mark).
//! Words of this kind encode based curves on closed oriented surfaces: the
//! letters are the crossings, the sign records how the second strand passes
//! the first, and forgetting the basepoint corresponds to the cyclic shift
//! relation `A^e x A^e y ~ x A^-e y A^-e`.
//!
//! The crate provides:
//!
//! - [`word`] — the core data model: parsing, canonical labeling, sub-words,
//!   and exhaustive enumeration of isomorphism classes;
//! - [`cyclic`] — the shift move and canonical orbit representatives;
//! - [`surface`] — reconstruction of the ribbon surface of a word and its
//!   genus, used to detect spherical words;
//! - [`invariants`] — feature vectors over singular classes, symbol tables,
//!   the skein-style evaluation, and the three spherical invariants
//!   `J+_s`, `J-_s`, `St_s`;
//! - [`moves`] — the three regular homotopy moves as word rewrites, plus a
//!   seeded random walk over spherical words;
//! - [`solver`] — exact rational linear algebra: invariant space dimensions,
//!   symbol table completion, and the completeness check.
//!
//! All arithmetic is exact (arbitrary precision rationals); there is no
//! floating point anywhere in the crate.

pub mod cyclic;
pub mod invariants;
pub mod moves;
pub mod solver;
pub mod surface;
pub mod word;

mod error;

pub use error::Error;

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a rational from an integer pair.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}
