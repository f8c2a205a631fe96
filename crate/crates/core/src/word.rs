//! Core data model for signed (possibly singular) Gauss words.
//!
//! A [`SignedWord`] is a based sequence of letter occurrences in which every
//! letter occurs exactly twice; each letter carries a [`Sign`] and a singular
//! flag shared by both of its occurrences. Letter identity is positional
//! metadata only: two words are isomorphic exactly when relabeling letters by
//! order of first occurrence yields the same [`WordClass`].
//!
//! External notation (the word grammar): a word is a whitespace-separated
//! token sequence, `token := ['-'] IDENT ['*']` where `IDENT` is a letter
//! followed by letters or digits. `-` marks sign minus, `*` marks a singular
//! letter, and the empty token sequence denotes the empty word.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::Error;

/// Default guard for exhaustive enumeration (words of up to 12 occurrences).
pub const DEFAULT_ENUMERATION_LIMIT: usize = 6;

/// Sign of a letter. The derived order `Plus < Minus` is part of the fixed
/// token order used for all lexicographic comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Numeric letter identity, unique within one word.
pub type LetterId = u32;

/// Per-letter data, shared by both occurrences of the letter.
/// The derived order (sign, then actual < singular) is part of the token order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub sign: Sign,
    pub singular: bool,
}

impl Letter {
    pub fn actual(sign: Sign) -> Letter {
        Letter { sign, singular: false }
    }

    pub fn starred(self) -> Letter {
        Letter { singular: true, ..self }
    }
}

/// A based signed Gauss word: a sequence of letter occurrences of length `2n`
/// together with the letter table. Valid words have every table id occurring
/// exactly twice in the sequence and no stray ids; the empty word is valid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedWord {
    occurrences: Vec<LetterId>,
    letters: BTreeMap<LetterId, Letter>,
}

impl SignedWord {
    /// The empty word.
    pub fn empty() -> SignedWord {
        SignedWord { occurrences: Vec::new(), letters: BTreeMap::new() }
    }

    /// Builds a word from parts, validating the two-occurrence invariant.
    pub fn new(
        occurrences: Vec<LetterId>,
        letters: BTreeMap<LetterId, Letter>,
    ) -> Result<SignedWord, Error> {
        let mut counts: BTreeMap<LetterId, usize> = BTreeMap::new();
        for &id in &occurrences {
            *counts.entry(id).or_insert(0) += 1;
        }
        for (&id, &count) in &counts {
            if count != 2 {
                return Err(Error::LetterCount { name: id.to_string(), count });
            }
            if !letters.contains_key(&id) {
                return Err(Error::UnknownLetter { id });
            }
        }
        for &id in letters.keys() {
            if !counts.contains_key(&id) {
                return Err(Error::LetterCount { name: id.to_string(), count: 0 });
            }
        }
        Ok(SignedWord { occurrences, letters })
    }

    /// Number of letters `n`; the word has `2n` occurrences.
    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    /// Length of the occurrence sequence, `2n`.
    pub fn len(&self) -> usize {
        self.occurrences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occurrences.is_empty()
    }

    pub fn occurrences(&self) -> &[LetterId] {
        &self.occurrences
    }

    pub fn letters(&self) -> &BTreeMap<LetterId, Letter> {
        &self.letters
    }

    pub fn letter(&self, id: LetterId) -> Option<Letter> {
        self.letters.get(&id).copied()
    }

    /// Positions of the two occurrences of `id`, in increasing order.
    pub fn positions(&self, id: LetterId) -> Option<(usize, usize)> {
        let mut first = None;
        for (i, &occ) in self.occurrences.iter().enumerate() {
            if occ == id {
                match first {
                    None => first = Some(i),
                    Some(f) => return Some((f, i)),
                }
            }
        }
        None
    }

    /// True if any letter carries the singular mark.
    pub fn has_singular(&self) -> bool {
        self.letters.values().any(|l| l.singular)
    }

    /// Ids of the singular letters.
    pub fn singular_letters(&self) -> Vec<LetterId> {
        self.letters
            .iter()
            .filter(|(_, l)| l.singular)
            .map(|(&id, _)| id)
            .collect()
    }

    /// The word `w*`: every letter turned singular, signs kept.
    pub fn starred(&self) -> SignedWord {
        SignedWord {
            occurrences: self.occurrences.clone(),
            letters: self.letters.iter().map(|(&id, &l)| (id, l.starred())).collect(),
        }
    }

    /// Keeps only the letters in `keep`, deleting the occurrences of all
    /// others. Remaining ids and per-letter data are unchanged.
    pub fn subword(&self, keep: &[LetterId]) -> Result<SignedWord, Error> {
        for &id in keep {
            if !self.letters.contains_key(&id) {
                return Err(Error::UnknownLetter { id });
            }
        }
        let kept: BTreeMap<LetterId, Letter> = keep
            .iter()
            .map(|&id| (id, self.letters[&id]))
            .collect();
        let occurrences = self
            .occurrences
            .iter()
            .copied()
            .filter(|id| kept.contains_key(id))
            .collect();
        Ok(SignedWord { occurrences, letters: kept })
    }

    /// Relabels letters `0, 1, 2, ...` in order of first occurrence. Equality
    /// of the results decides isomorphism.
    pub fn canonicalize(&self) -> WordClass {
        let mut relabel: BTreeMap<LetterId, LetterId> = BTreeMap::new();
        let mut occurrences = Vec::with_capacity(self.occurrences.len());
        for &id in &self.occurrences {
            let next = relabel.len() as LetterId;
            let new_id = *relabel.entry(id).or_insert(next);
            occurrences.push(new_id);
        }
        let letters = relabel
            .iter()
            .map(|(&old, &new)| (new, self.letters[&old]))
            .collect();
        WordClass(SignedWord { occurrences, letters })
    }

    /// Reverses the occurrence sequence (letters keep sign and mark).
    pub fn reversed(&self) -> SignedWord {
        SignedWord {
            occurrences: self.occurrences.iter().rev().copied().collect(),
            letters: self.letters.clone(),
        }
    }

    /// Flips the sign of every letter.
    pub fn sign_flipped(&self) -> SignedWord {
        SignedWord {
            occurrences: self.occurrences.clone(),
            letters: self
                .letters
                .iter()
                .map(|(&id, &l)| (id, Letter { sign: l.sign.flipped(), ..l }))
                .collect(),
        }
    }

    /// Concatenation with a word on fresh ids (`other`'s ids are shifted past
    /// this word's maximum id).
    pub fn concat_disjoint(&self, other: &SignedWord) -> SignedWord {
        let shift = self.letters.keys().max().map_or(0, |&m| m + 1);
        let mut occurrences = self.occurrences.clone();
        occurrences.extend(other.occurrences.iter().map(|&id| id + shift));
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().map(|(&id, &l)| (id + shift, l)));
        SignedWord { occurrences, letters }
    }

    /// The fixed token order: occurrence sequences are compared position by
    /// position by (first-occurrence index of the letter, sign with `+ < -`,
    /// singular flag with actual < singular), shorter words first.
    pub fn token_cmp(&self, other: &SignedWord) -> Ordering {
        self.token_key().cmp(&other.token_key())
    }

    fn token_key(&self) -> Vec<(LetterId, Letter)> {
        let mut first_seen: BTreeMap<LetterId, LetterId> = BTreeMap::new();
        let mut key = Vec::with_capacity(self.occurrences.len());
        for &id in &self.occurrences {
            let next = first_seen.len() as LetterId;
            let rank = *first_seen.entry(id).or_insert(next);
            key.push((rank, self.letters[&id]));
        }
        key
    }

    fn name_of(&self, id: LetterId) -> String {
        let rank = self.letters.keys().position(|&k| k == id).expect("letter in table");
        if self.letters.len() <= 26 {
            char::from(b'A' + rank as u8).to_string()
        } else {
            format!("A{}", rank + 1)
        }
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &id in &self.occurrences {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let letter = self.letters[&id];
            if letter.sign == Sign::Minus {
                write!(f, "-")?;
            }
            write!(f, "{}", self.name_of(id))?;
            if letter.singular {
                write!(f, "*")?;
            }
        }
        Ok(())
    }
}

/// Canonical representative of an isomorphism class of signed words.
/// Canonicalization is idempotent, so the wrapped word's letters are always
/// labeled `0, 1, 2, ...` by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordClass(SignedWord);

impl WordClass {
    pub fn empty() -> WordClass {
        WordClass(SignedWord::empty())
    }

    pub fn word(&self) -> &SignedWord {
        &self.0
    }

    pub fn into_word(self) -> SignedWord {
        self.0
    }

    pub fn letter_count(&self) -> usize {
        self.0.letter_count()
    }
}

impl Ord for WordClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.token_cmp(&other.0))
    }
}

impl PartialOrd for WordClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<WordClass> for SignedWord {
    fn from(class: WordClass) -> SignedWord {
        class.0
    }
}

/// Parses the word grammar. Whitespace-insensitive; letter names are
/// arbitrary identifiers; both occurrences of a name must carry identical
/// sign and singular markers.
pub fn parse(text: &str) -> Result<SignedWord, Error> {
    let mut ids: BTreeMap<String, LetterId> = BTreeMap::new();
    let mut letters: BTreeMap<LetterId, Letter> = BTreeMap::new();
    let mut counts: Vec<(String, usize)> = Vec::new();
    let mut occurrences = Vec::new();

    for token in text.split_whitespace() {
        let (name, letter) = parse_token(token)?;
        match ids.get(name) {
            None => {
                let id = ids.len() as LetterId;
                ids.insert(name.to_string(), id);
                letters.insert(id, letter);
                counts.push((name.to_string(), 1));
                occurrences.push(id);
            }
            Some(&id) => {
                if letters[&id] != letter {
                    return Err(Error::SignConflict { name: name.to_string() });
                }
                counts[id as usize].1 += 1;
                occurrences.push(id);
            }
        }
    }

    for (name, count) in counts {
        if count != 2 {
            return Err(Error::LetterCount { name, count });
        }
    }
    Ok(SignedWord { occurrences, letters })
}

fn parse_token(token: &str) -> Result<(&str, Letter), Error> {
    let bad = || Error::Syntax { token: token.to_string() };
    let (sign, rest) = match token.strip_prefix('-') {
        Some(rest) => (Sign::Minus, rest),
        None => (Sign::Plus, token),
    };
    let (singular, name) = match rest.strip_suffix('*') {
        Some(name) => (true, name),
        None => (false, rest),
    };
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return Err(bad()),
    }
    if !chars.all(|c| c.is_ascii_alphanumeric()) {
        return Err(bad());
    }
    Ok((name, Letter { sign, singular }))
}

/// All isomorphism classes of signed words of length `2n`, one canonical
/// representative each, in the fixed token order. With `signed = false` only
/// the all-plus representatives (the unsigned patterns) are produced.
///
/// Guarded: `n` may not exceed `limit` (pass
/// [`DEFAULT_ENUMERATION_LIMIT`] unless a caller explicitly raises it).
pub fn enumerate_words(n: usize, signed: bool, limit: usize) -> Result<Vec<WordClass>, Error> {
    if n > limit {
        return Err(Error::LimitExceeded { what: "enumeration half-length", requested: n, limit });
    }
    let mut patterns = Vec::new();
    let mut slots = vec![u32::MAX; 2 * n];
    fill_pattern(&mut slots, 0, &mut patterns);

    let mut classes = Vec::new();
    for pattern in &patterns {
        let sign_masks: u32 = if signed { 1 << n } else { 1 };
        for mask in 0..sign_masks {
            let letters = (0..n as u32)
                .map(|id| {
                    let sign = if mask >> id & 1 == 0 { Sign::Plus } else { Sign::Minus };
                    (id, Letter::actual(sign))
                })
                .collect();
            let word = SignedWord { occurrences: pattern.clone(), letters };
            classes.push(WordClass(word));
        }
    }
    classes.sort();
    Ok(classes)
}

/// Places the next chord in the first free slot and every later free slot.
/// Letters come out labeled by first occurrence, so each pattern is canonical.
fn fill_pattern(slots: &mut Vec<u32>, next_letter: u32, out: &mut Vec<Vec<u32>>) {
    let first = match slots.iter().position(|&s| s == u32::MAX) {
        None => {
            out.push(slots.clone());
            return;
        }
        Some(i) => i,
    };
    for second in first + 1..slots.len() {
        if slots[second] != u32::MAX {
            continue;
        }
        slots[first] = next_letter;
        slots[second] = next_letter;
        fill_pattern(slots, next_letter + 1, out);
        slots[first] = u32::MAX;
        slots[second] = u32::MAX;
    }
}

/// Number of isomorphism classes of signed words of length `2n`:
/// `(2n)! / n!`, i.e. `(2n-1)!! * 2^n`.
pub fn class_count(n: usize) -> u128 {
    let mut count: u128 = 1;
    for k in n + 1..=2 * n {
        count *= k as u128;
    }
    count
}
