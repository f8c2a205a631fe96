//! The three regular homotopy moves as word rewrite rules.
//!
//! Forward clauses, with `x`, `y`, `z` ranging over sub-words free of the
//! named letters:
//!
//! 1. `xy -> A^e B^-e x A^e B^-e y` (fresh interleaved pair, opposite signs);
//! 2. `xy -> A^e B^-e x B^-e A^e y` (fresh nested pair, opposite signs);
//! 3. `A B x A C y B C z -> B A x C A y C B z` (three adjacent transpositions).
//!
//! Move 3 keeps every letter's sign. Under [`SignRule::Uniform`] (the
//! default) a move-3 site additionally requires all three letters to carry
//! one common sign, which is the reading under which the invariant deltas
//! of the spherical invariants hold; [`SignRule::Independent`] drops that
//! requirement and is provided so the difference is observable.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::surface::genus;
use crate::word::{LetterId, Sign, SignedWord, WordClass};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    One,
    Two,
    Three,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveKind::One => write!(f, "move1"),
            MoveKind::Two => write!(f, "move2"),
            MoveKind::Three => write!(f, "move3"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Forward => write!(f, "fwd"),
            Direction::Inverse => write!(f, "inv"),
        }
    }
}

/// Sign reading for move 3 (see module docs).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignRule {
    #[default]
    Uniform,
    Independent,
}

/// A concrete site where a move applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveSite {
    /// Moves 1-2 forward: insert a fresh pair around the split `x = w[..split]`,
    /// `y = w[split..]`, with the first fresh letter signed `sign`.
    Insert { kind: MoveKind, split: usize, sign: Sign },
    /// Moves 1-2 inverse: delete the letters `a`, `b` matched to the clause.
    Remove { kind: MoveKind, a: LetterId, b: LetterId },
    /// Move 3 in either direction, on the letters matched to the clause roles.
    Triple { direction: Direction, a: LetterId, b: LetterId, c: LetterId },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::Insert { kind, .. } | MoveSite::Remove { kind, .. } => *kind,
            MoveSite::Triple { .. } => MoveKind::Three,
        }
    }

    pub fn direction(&self) -> Direction {
        match self {
            MoveSite::Insert { .. } => Direction::Forward,
            MoveSite::Remove { .. } => Direction::Inverse,
            MoveSite::Triple { direction, .. } => *direction,
        }
    }
}

/// All sites where the clause of `kind`/`direction` matches `word`.
pub fn find_sites(
    word: &SignedWord,
    kind: MoveKind,
    direction: Direction,
    rule: SignRule,
) -> Result<Vec<MoveSite>, Error> {
    if word.has_singular() {
        return Err(Error::SingularUnsupported);
    }
    let mut sites = Vec::new();
    match (kind, direction) {
        (MoveKind::One | MoveKind::Two, Direction::Forward) => {
            for split in 0..=word.len() {
                for sign in [Sign::Plus, Sign::Minus] {
                    sites.push(MoveSite::Insert { kind, split, sign });
                }
            }
        }
        (MoveKind::One, Direction::Inverse) => {
            sites.extend(pair_inverse_site(word, MoveKind::One));
        }
        (MoveKind::Two, Direction::Inverse) => {
            sites.extend(pair_inverse_site(word, MoveKind::Two));
        }
        (MoveKind::Three, direction) => {
            sites.extend(triple_site(word, direction, rule));
        }
    }
    Ok(sites)
}

/// Matches `A B x A B y` (move 1) or `A B x B A y` (move 2) with opposite
/// signs on `A`, `B`. The clause anchors the first pair at the basepoint, so
/// each word carries at most one such site.
fn pair_inverse_site(word: &SignedWord, kind: MoveKind) -> Option<MoveSite> {
    if word.len() < 4 {
        return None;
    }
    let a = word.occurrences()[0];
    let b = word.occurrences()[1];
    if a == b {
        return None;
    }
    let la = word.letter(a)?;
    let lb = word.letter(b)?;
    if lb.sign != la.sign.flipped() {
        return None;
    }
    let (a1, a2) = word.positions(a)?;
    let (b1, b2) = word.positions(b)?;
    debug_assert_eq!((a1, b1), (0, 1));
    let matches = match kind {
        MoveKind::One => b2 == a2 + 1,
        MoveKind::Two => a2 == b2 + 1,
        MoveKind::Three => return None,
    };
    matches.then_some(MoveSite::Remove { kind, a, b })
}

/// Matches the move-3 clause: forward `A B x A C y B C z`, inverse
/// `B A x C A y C B z`. The six explicit occurrences pin the three letters,
/// so each word carries at most one site per direction.
fn triple_site(word: &SignedWord, direction: Direction, rule: SignRule) -> Option<MoveSite> {
    if word.len() < 6 {
        return None;
    }
    let occ = word.occurrences();
    let (a, b) = match direction {
        Direction::Forward => (occ[0], occ[1]),
        Direction::Inverse => (occ[1], occ[0]),
    };
    if a == b {
        return None;
    }
    let (_, a2) = word.positions(a)?;
    let (_, b2) = word.positions(b)?;
    // Forward: C first appears right after A's second occurrence and closes
    // right after B's second. Inverse: C first appears right before A's
    // second occurrence and closes right before B's second.
    let (c, c1_expected, c2_expected) = match direction {
        Direction::Forward => {
            if a2 + 1 >= word.len() {
                return None;
            }
            (occ[a2 + 1], a2 + 1, b2 + 1)
        }
        Direction::Inverse => {
            let c1 = a2.checked_sub(1)?;
            (occ[c1], c1, b2.checked_sub(1)?)
        }
    };
    if c == a || c == b {
        return None;
    }
    let (c1, c2) = word.positions(c)?;
    if (c1, c2) != (c1_expected, c2_expected) {
        return None;
    }
    // The clause needs the second pair strictly between the first and third.
    match direction {
        Direction::Forward => {
            if !(1 < a2 && c1 < b2) {
                return None;
            }
        }
        Direction::Inverse => {
            if !(1 < c1 && a2 < c2) {
                return None;
            }
        }
    }
    if rule == SignRule::Uniform {
        let sa = word.letter(a)?.sign;
        if word.letter(b)?.sign != sa || word.letter(c)?.sign != sa {
            return None;
        }
    }
    Some(MoveSite::Triple { direction, a, b, c })
}

/// Applies a site found by [`find_sites`], returning the canonical image.
pub fn apply(word: &SignedWord, site: &MoveSite, rule: SignRule) -> Result<SignedWord, Error> {
    if word.has_singular() {
        return Err(Error::SingularUnsupported);
    }
    let image = match *site {
        MoveSite::Insert { kind, split, sign } => {
            if split > word.len() {
                return Err(Error::InvalidSite { reason: format!("split {split} out of range") });
            }
            let fresh = word.letters().keys().max().map_or(0, |&m| m + 1);
            let (a, b) = (fresh, fresh + 1);
            let mut letters = word.letters().clone();
            letters.insert(a, crate::word::Letter::actual(sign));
            letters.insert(b, crate::word::Letter::actual(sign.flipped()));
            let mut occurrences = Vec::with_capacity(word.len() + 4);
            occurrences.extend_from_slice(&[a, b]);
            occurrences.extend_from_slice(&word.occurrences()[..split]);
            match kind {
                MoveKind::One => occurrences.extend_from_slice(&[a, b]),
                MoveKind::Two => occurrences.extend_from_slice(&[b, a]),
                MoveKind::Three => {
                    return Err(Error::InvalidSite { reason: "move 3 has no insert form".into() })
                }
            }
            occurrences.extend_from_slice(&word.occurrences()[split..]);
            SignedWord::new(occurrences, letters).expect("insertion preserves validity")
        }
        MoveSite::Remove { kind, a, b } => {
            let found = pair_inverse_site(word, kind);
            if found != Some(*site) {
                return Err(Error::InvalidSite {
                    reason: format!("{kind} inverse does not match letters {a}, {b}"),
                });
            }
            let keep: Vec<LetterId> =
                word.letters().keys().copied().filter(|&id| id != a && id != b).collect();
            word.subword(&keep)?
        }
        MoveSite::Triple { direction, .. } => {
            let found = triple_site(word, direction, rule);
            if found != Some(*site) {
                return Err(Error::InvalidSite { reason: "move 3 pattern does not match".into() });
            }
            let (a, b) = match direction {
                Direction::Forward => (word.occurrences()[0], word.occurrences()[1]),
                Direction::Inverse => (word.occurrences()[1], word.occurrences()[0]),
            };
            let (_, a2) = word.positions(a).expect("matched site");
            let (_, b2) = word.positions(b).expect("matched site");
            // Both directions transpose the leading pair and the pairs at the
            // later occurrences of A and B; the three pairs are disjoint.
            let swaps = match direction {
                Direction::Forward => [(0, 1), (a2, a2 + 1), (b2, b2 + 1)],
                Direction::Inverse => [(0, 1), (a2 - 1, a2), (b2 - 1, b2)],
            };
            let mut occurrences = word.occurrences().to_vec();
            for (i, j) in swaps {
                occurrences.swap(i, j);
            }
            SignedWord::new(occurrences, word.letters().clone()).expect("swap preserves validity")
        }
    };
    Ok(image.canonicalize().into_word())
}

/// Expected change of `(J+_s, J-_s, St_s)` under one move application.
pub fn expected_delta(kind: MoveKind, direction: Direction) -> [i64; 3] {
    let forward = match kind {
        MoveKind::One => [2, 0, 0],
        MoveKind::Two => [0, -2, 0],
        MoveKind::Three => [0, 0, 1],
    };
    match direction {
        Direction::Forward => forward,
        Direction::Inverse => forward.map(|d| -d),
    }
}

/// One recorded step of a random walk.
#[derive(Clone, Debug)]
pub struct WalkStep {
    pub step: usize,
    pub kind: MoveKind,
    pub direction: Direction,
    /// The word after the step, in canonical labeling.
    pub word: WordClass,
    pub expected_delta: [i64; 3],
}

impl WalkStep {
    /// One JSON-lines record: `{"step", "kind", "dir", "word", "expected_delta"}`.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "step": self.step,
            "kind": self.kind.to_string(),
            "dir": self.direction.to_string(),
            "word": self.word.to_string(),
            "expected_delta": self.expected_delta,
        })
    }
}

/// Result of [`random_spherical`].
#[derive(Clone, Debug)]
pub struct Walk {
    pub final_word: WordClass,
    pub log: Vec<WalkStep>,
}

/// Seeded random walk over spherical words, starting from the empty word.
///
/// Each step picks uniformly among all applicable sites (every kind, both
/// directions, move-3 sites under the uniform sign rule) whose image stays
/// within the letter bound and has genus 0. The word-level clauses alone do
/// not preserve sphericity — inserting an interleaved pair into the empty
/// word already leaves it — so candidates are filtered by the genus of their
/// image; the walk therefore generates spherical words by construction.
pub fn random_spherical(seed: u64, steps: usize, max_letters: usize) -> Walk {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = SignedWord::empty();
    let mut log = Vec::with_capacity(steps);

    for step in 1..=steps {
        let mut candidates = Vec::new();
        for kind in [MoveKind::One, MoveKind::Two, MoveKind::Three] {
            for direction in [Direction::Forward, Direction::Inverse] {
                let grows = matches!(kind, MoveKind::One | MoveKind::Two)
                    && direction == Direction::Forward;
                if grows && current.letter_count() + 2 > max_letters {
                    continue;
                }
                let sites = find_sites(&current, kind, direction, SignRule::Uniform)
                    .expect("walk words are non-singular");
                for site in sites {
                    let image = apply(&current, &site, SignRule::Uniform)
                        .expect("site came from find_sites");
                    if genus(&image).expect("walk words are non-singular") == 0 {
                        candidates.push((kind, direction, image));
                    }
                }
            }
        }
        debug_assert!(!candidates.is_empty(), "a spherical word always admits a spherical move");
        if candidates.is_empty() {
            break;
        }
        let (kind, direction, image) = candidates.swap_remove(rng.gen_range(0..candidates.len()));
        current = image;
        log.push(WalkStep {
            step,
            kind,
            direction,
            word: current.canonicalize(),
            expected_delta: expected_delta(kind, direction),
        });
    }

    Walk { final_word: current.canonicalize(), log }
}
