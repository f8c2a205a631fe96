//! Cyclic equivalence of signed words: basepoint forgetting.
//!
//! The shift move rewrites `A^e x A^e y` into `x A^-e y A^-e` where `A` is
//! the letter at the basepoint; its orbit closure is the cyclic equivalence
//! relation. The shift is defined only on non-singular words.

use std::collections::BTreeSet;
use std::fmt;

use crate::word::{SignedWord, WordClass};
use crate::Error;

/// Canonical representative of a shift orbit: the token-order minimum over
/// the orbit. Equality of representatives decides cyclic equivalence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicClass(WordClass);

impl CyclicClass {
    pub fn representative(&self) -> &WordClass {
        &self.0
    }
}

impl fmt::Display for CyclicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Moves the basepoint past the first crossing: `A^e x A^e y -> x A^-e y A^-e`,
/// returned in canonical labeling. `shift(phi) = phi`.
pub fn shift(word: &SignedWord) -> Result<SignedWord, Error> {
    if word.has_singular() {
        return Err(Error::SingularUnsupported);
    }
    if word.is_empty() {
        return Ok(SignedWord::empty());
    }
    let first = word.occurrences()[0];
    let (_, second_pos) = word.positions(first).expect("letter occurs twice");

    let mut occurrences: Vec<u32> = word.occurrences()[1..].to_vec();
    occurrences.push(first);
    debug_assert_eq!(occurrences[second_pos - 1], first);

    let mut letters = word.letters().clone();
    let entry = letters.get_mut(&first).expect("letter in table");
    entry.sign = entry.sign.flipped();

    let shifted = SignedWord::new(occurrences, letters).expect("shift preserves validity");
    Ok(shifted.canonicalize().into_word())
}

/// Two-sided inverse of [`shift`]: `x A^-e y A^-e -> A^e x A^e y`.
pub fn unshift(word: &SignedWord) -> Result<SignedWord, Error> {
    if word.has_singular() {
        return Err(Error::SingularUnsupported);
    }
    if word.is_empty() {
        return Ok(SignedWord::empty());
    }
    let last = *word.occurrences().last().expect("nonempty");
    let (first_pos, _) = word.positions(last).expect("letter occurs twice");

    let mut occurrences = Vec::with_capacity(word.len());
    occurrences.push(last);
    occurrences.extend_from_slice(&word.occurrences()[..word.len() - 1]);
    debug_assert_eq!(occurrences[first_pos + 1], last);

    let mut letters = word.letters().clone();
    let entry = letters.get_mut(&last).expect("letter in table");
    entry.sign = entry.sign.flipped();

    let unshifted = SignedWord::new(occurrences, letters).expect("unshift preserves validity");
    Ok(unshifted.canonicalize().into_word())
}

/// The distinct members of the shift orbit of `word`, sorted.
pub fn shift_orbit(word: &SignedWord) -> Result<Vec<WordClass>, Error> {
    let mut orbit = BTreeSet::new();
    let mut current = word.canonicalize().into_word();
    for _ in 0..word.len().max(1) {
        orbit.insert(current.canonicalize());
        current = shift(&current)?;
    }
    debug_assert!(orbit.contains(&word.canonicalize()));
    Ok(orbit.into_iter().collect())
}

/// The minimum of the shift orbit under the fixed token order.
pub fn cyclic_canonical(word: &SignedWord) -> Result<CyclicClass, Error> {
    let orbit = shift_orbit(word)?;
    Ok(CyclicClass(orbit.into_iter().next().expect("orbit is nonempty")))
}
