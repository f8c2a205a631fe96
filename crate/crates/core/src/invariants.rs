//! The finite type invariant engine.
//!
//! An order-`n` invariant of signed words is determined by its symbol table:
//! its prolongation's values on fully singular canonical classes of up to
//! `n` letters, together with the value on the empty word. The prolongation
//! rule `v(A* x A* y) = v(A x A y) - v(x y)` inverts to a subset sum, so
//! evaluation is the inner product of a table with the word's
//! [`FeatureVector`] — the count, per singular class, of letter subsets
//! whose starred sub-word lands in that class.
//!
//! The spherical invariants `J+_s`, `J-_s`, `St_s` are the degree-2 tables
//! built from the parameter triples `(-1/2, 1, -3)`, `(-3/2, 1, -3)`,
//! `(1/4, -1/2, 1/2)`. Their constant terms `(1/2, 1/2, -1/4)` are fitted so
//! the chain-curve normalization holds exactly for every `i`; setting
//! `v(phi) = 0` instead is inconsistent with that normalization.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::solver::{complete_symbol_table, Completion, MoveDeltas};
use crate::surface::genus;
use crate::word::{LetterId, SignedWord, WordClass};
use crate::{rational, Error, Rational};

/// Counts of letter subsets per canonical fully singular class, up to a
/// degree bound. The empty subset contributes the `phi` class with count 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeatureVector {
    degree: usize,
    counts: BTreeMap<WordClass, u64>,
}

impl FeatureVector {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn counts(&self) -> &BTreeMap<WordClass, u64> {
        &self.counts
    }

    pub fn count(&self, class: &WordClass) -> u64 {
        self.counts.get(class).copied().unwrap_or(0)
    }
}

/// Subset counts of `word` per singular class, truncated at subsets of
/// `degree` letters. Defined on non-singular words.
pub fn feature_vector(word: &SignedWord, degree: usize) -> Result<FeatureVector, Error> {
    if word.has_singular() {
        return Err(Error::SingularUnsupported);
    }
    let ids: Vec<LetterId> = word.letters().keys().copied().collect();
    let mut counts: BTreeMap<WordClass, u64> = BTreeMap::new();
    let mut subset = Vec::new();
    subsets_up_to(&ids, degree, &mut subset, &mut |chosen| {
        let class = word
            .subword(chosen)
            .expect("subset of the word's letters")
            .starred()
            .canonicalize();
        *counts.entry(class).or_insert(0) += 1;
    });
    Ok(FeatureVector { degree, counts })
}

fn subsets_up_to(
    ids: &[LetterId],
    max_size: usize,
    subset: &mut Vec<LetterId>,
    visit: &mut impl FnMut(&[LetterId]),
) {
    visit(subset);
    if subset.len() == max_size {
        return;
    }
    let start = subset
        .last()
        .map_or(0, |&last| ids.iter().position(|&id| id == last).expect("member") + 1);
    for i in start..ids.len() {
        subset.push(ids[i]);
        subsets_up_to(ids, max_size, subset, visit);
        subset.pop();
    }
}

/// Symbol table of an order-`degree` invariant: exact rational values on
/// canonical fully singular classes of up to `degree` letters, including the
/// empty class. Lookups of longer fully singular classes are 0 by definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTable {
    degree: usize,
    values: BTreeMap<WordClass, Rational>,
}

impl SymbolTable {
    pub fn new(
        degree: usize,
        values: BTreeMap<WordClass, Rational>,
    ) -> Result<SymbolTable, Error> {
        for class in values.keys() {
            let word = class.word();
            if word.letters().values().any(|l| !l.singular) {
                return Err(Error::BadTable {
                    reason: format!("key `{class}` is not fully singular"),
                });
            }
            if &word.canonicalize() != class {
                return Err(Error::BadTable { reason: format!("key `{class}` is not canonical") });
            }
            if word.letter_count() > degree {
                return Err(Error::BadTable {
                    reason: format!("key `{class}` exceeds degree {degree}"),
                });
            }
        }
        Ok(SymbolTable { degree, values })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entries(&self) -> &BTreeMap<WordClass, Rational> {
        &self.values
    }

    pub fn value(&self, class: &WordClass) -> Option<&Rational> {
        self.values.get(class)
    }

    /// The constant term: the table's value on the empty word.
    pub fn phi(&self) -> Rational {
        self.values.get(&WordClass::empty()).cloned().unwrap_or_else(Rational::zero)
    }

    /// Table file form: `{"degree": n, "phi": "a/b", "values": {class: "p/q"}}`
    /// with classes in the word grammar ('*' on every letter).
    pub fn to_json(&self) -> Value {
        let mut values = Map::new();
        for (class, value) in &self.values {
            if class.letter_count() == 0 {
                continue;
            }
            values.insert(class.to_string(), Value::String(value.to_string()));
        }
        json!({
            "degree": self.degree,
            "phi": self.phi().to_string(),
            "values": values,
        })
    }

    pub fn from_json(value: &Value) -> Result<SymbolTable, Error> {
        let bad = |reason: &str| Error::BadTable { reason: reason.to_string() };
        let degree = value
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer field `degree`"))? as usize;
        let mut values = BTreeMap::new();
        if let Some(phi) = value.get("phi") {
            let text = phi.as_str().ok_or_else(|| bad("`phi` must be a fraction string"))?;
            values.insert(WordClass::empty(), parse_rational(text)?);
        }
        let map = value
            .get("values")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing object field `values`"))?;
        for (class_text, entry) in map {
            let class = crate::word::parse(class_text)?.canonicalize();
            let text =
                entry.as_str().ok_or_else(|| bad("table values must be fraction strings"))?;
            values.insert(class, parse_rational(text)?);
        }
        SymbolTable::new(degree, values)
    }
}

/// Parses an exact fraction string such as `-3`, `5/2`.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    Rational::from_str(text.trim())
        .map_err(|_| Error::BadTable { reason: format!("bad fraction `{text}`") })
}

/// Evaluates `table` on a possibly singular word: the sum of table values
/// over letter subsets containing all singular letters. Classes absent from
/// the table contribute 0.
pub fn evaluate(table: &SymbolTable, word: &SignedWord) -> Rational {
    evaluate_impl(table, word, false).expect("lenient evaluation cannot fail")
}

/// As [`evaluate`], but raises [`Error::MissingSymbol`] when a class within
/// the degree bound is absent from the table.
pub fn evaluate_strict(table: &SymbolTable, word: &SignedWord) -> Result<Rational, Error> {
    evaluate_impl(table, word, true)
}

fn evaluate_impl(table: &SymbolTable, word: &SignedWord, strict: bool) -> Result<Rational, Error> {
    let singular = word.singular_letters();
    if singular.len() > table.degree() {
        return Ok(Rational::zero());
    }
    let free: Vec<LetterId> =
        word.letters().iter().filter(|(_, l)| !l.singular).map(|(&id, _)| id).collect();
    let budget = table.degree() - singular.len();

    let mut total = Rational::zero();
    let mut missing: Option<WordClass> = None;
    let mut subset = Vec::new();
    subsets_up_to(&free, budget, &mut subset, &mut |chosen| {
        let mut keep = singular.clone();
        keep.extend_from_slice(chosen);
        let class = word
            .subword(&keep)
            .expect("subset of the word's letters")
            .starred()
            .canonicalize();
        match table.value(&class) {
            Some(value) => total += value,
            None if strict && missing.is_none() => missing = Some(class),
            None => {}
        }
    });
    match missing {
        Some(class) if strict => Err(Error::MissingSymbol { class: class.to_string() }),
        _ => Ok(total),
    }
}

/// Inner product of a table with a precomputed feature vector.
pub fn evaluate_features(table: &SymbolTable, features: &FeatureVector) -> Rational {
    debug_assert!(features.degree() >= table.degree());
    let mut total = Rational::zero();
    for (class, &count) in features.counts() {
        if let Some(value) = table.value(class) {
            total += value * Rational::from_integer(count.into());
        }
    }
    total
}

/// The three spherical invariants of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalInvariants {
    pub j_plus: Rational,
    pub j_minus: Rational,
    pub strangeness: Rational,
}

/// Their planar counterparts, shifted by the rotation number correction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarInvariants {
    pub j_plus: Rational,
    pub j_minus: Rational,
    pub strangeness: Rational,
}

/// The chain word `w_i = A1 A1 A2 A2 ... Ai Ai` normalizing the spherical
/// invariants (the plane curve `K_i`).
pub fn chain_word(i: usize) -> SignedWord {
    let occurrences = (0..i as u32).flat_map(|k| [k, k]).collect();
    let letters = (0..i as u32)
        .map(|k| (k, crate::word::Letter::actual(crate::word::Sign::Plus)))
        .collect();
    SignedWord::new(occurrences, letters).expect("chain words are valid")
}

/// Parameters `(p, q, r, a0)` of the three spherical tables.
pub fn arnold_parameters() -> [(Rational, Rational, Rational, Rational); 3] {
    [
        (rational(-1, 2), rational(1, 1), rational(-3, 1), rational(1, 2)),
        (rational(-3, 2), rational(1, 1), rational(-3, 1), rational(1, 2)),
        (rational(1, 4), rational(-1, 2), rational(1, 2), rational(-1, 4)),
    ]
}

/// Builds the degree-2 spherical table with signature values `p`, `q`, `r`
/// and constant term `a0`. Seeds the listed entries
///
/// ```text
/// (AA)* = p
/// (AABB)* = (A-B-BA)* = -(AA-B-B)* = q
/// (ABAB)* = (-A-B-A-B)* = -(A-BA-B)* = -(-AB-AB)* = r
/// ```
///
/// and completes the remaining degree-2 sign classes from the move-delta and
/// normalization constraints; the unique completion is returned together
/// with the completion report.
pub fn build_spherical_table(
    p: &Rational,
    q: &Rational,
    r: &Rational,
    a0: &Rational,
) -> Result<Completion, Error> {
    let seed: [(&str, Rational); 8] = [
        ("A A", p.clone()),
        ("A A B B", q.clone()),
        ("A -B -B A", q.clone()),
        ("A A -B -B", -q.clone()),
        ("A B A B", r.clone()),
        ("-A -B -A -B", r.clone()),
        ("A -B A -B", -r.clone()),
        ("-A B -A B", -r.clone()),
    ];
    let mut values = BTreeMap::new();
    values.insert(WordClass::empty(), a0.clone());
    for (text, value) in seed {
        let class = crate::word::parse(text)
            .expect("table seed parses")
            .starred()
            .canonicalize();
        values.insert(class, value);
    }
    let partial = SymbolTable::new(2, values)?;
    // The unique deltas compatible with the seeded values: inserting an
    // interleaved pair contributes 2p - r, a nested pair 2p + q, and a
    // uniform-sign triple move -3q - r.
    let deltas = MoveDeltas {
        move1: Rational::from_integer(2.into()) * p - r,
        move2: Rational::from_integer(2.into()) * p + q,
        move3: -Rational::from_integer(3.into()) * q - r,
    };
    let normalization = |i: usize| -> Rational {
        let i = Rational::from_integer(i.into());
        let pairs = &i * (&i - Rational::from_integer(1.into())) / Rational::from_integer(2.into());
        a0 + i * p + pairs * q
    };
    complete_symbol_table(&partial, &deltas, &normalization, 2, None)
}

/// The completed `J+_s`, `J-_s`, `St_s` tables, built once and cached.
pub fn spherical_tables() -> Result<&'static [SymbolTable; 3], Error> {
    static TABLES: OnceLock<Result<[SymbolTable; 3], Error>> = OnceLock::new();
    TABLES
        .get_or_init(|| {
            let mut tables = Vec::new();
            for (p, q, r, a0) in arnold_parameters() {
                let completion = build_spherical_table(&p, &q, &r, &a0)?;
                if !completion.free_directions.is_empty() {
                    return Err(Error::BadTable {
                        reason: "spherical table completion is not unique".to_string(),
                    });
                }
                tables.push(completion.table);
            }
            Ok(tables.try_into().expect("three tables"))
        })
        .as_ref()
        .map_err(Clone::clone)
}

fn spherical_values(word: &SignedWord) -> Result<SphericalInvariants, Error> {
    let tables = spherical_tables()?;
    let features = feature_vector(word, 2)?;
    Ok(SphericalInvariants {
        j_plus: evaluate_features(&tables[0], &features),
        j_minus: evaluate_features(&tables[1], &features),
        strangeness: evaluate_features(&tables[2], &features),
    })
}

/// `(J+_s, J-_s, St_s)` of a spherical word. Errors with
/// [`Error::NotSpherical`] on words of positive genus; see
/// [`arnold_invariants_unchecked`] for the warn-and-proceed variant.
pub fn arnold_invariants(word: &SignedWord) -> Result<SphericalInvariants, Error> {
    let g = genus(word)?;
    if g != 0 {
        return Err(Error::NotSpherical { word: word.to_string(), genus: g });
    }
    spherical_values(word)
}

/// Evaluates the three spherical tables on any non-singular word, returning
/// the values together with its sphericity. On a non-spherical word the
/// values are formal table evaluations, not invariants.
pub fn arnold_invariants_unchecked(
    word: &SignedWord,
) -> Result<(SphericalInvariants, bool), Error> {
    let spherical = genus(word)? == 0;
    Ok((spherical_values(word)?, spherical))
}

/// Planar invariants given the curve's rotation number:
/// `J+- = J+-_s - rot^2 / 2`, `St = St_s + rot^2 / 4`.
pub fn planar_invariants(word: &SignedWord, rotation: i64) -> Result<PlanarInvariants, Error> {
    let spherical = arnold_invariants(word)?;
    Ok(planar_from_spherical(&spherical, rotation))
}

/// The rotation-number correction alone.
pub fn planar_from_spherical(values: &SphericalInvariants, rotation: i64) -> PlanarInvariants {
    let square = rotation * rotation;
    PlanarInvariants {
        j_plus: &values.j_plus - rational(square, 2),
        j_minus: &values.j_minus - rational(square, 2),
        strangeness: &values.strangeness + rational(square, 4),
    }
}

impl fmt::Display for SphericalInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J+s = {}, J-s = {}, St_s = {}", self.j_plus, self.j_minus, self.strangeness)
    }
}

impl fmt::Display for PlanarInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J+ = {}, J- = {}, St = {}", self.j_plus, self.j_minus, self.strangeness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse;

    fn w(text: &str) -> SignedWord {
        parse(text).unwrap()
    }

    fn class(text: &str) -> WordClass {
        parse(text).unwrap().canonicalize()
    }

    fn table(degree: usize, entries: &[(&str, Rational)]) -> SymbolTable {
        let values = entries
            .iter()
            .map(|(text, value)| (w(text).starred().canonicalize(), value.clone()))
            .collect();
        SymbolTable::new(degree, values).unwrap()
    }

    #[test]
    fn feature_vector_of_one_letter_word() {
        let features = feature_vector(&w("A A"), 1).unwrap();
        assert_eq!(features.count(&WordClass::empty()), 1);
        assert_eq!(features.count(&class("A* A*")), 1);
        assert_eq!(features.counts().len(), 2);
    }

    #[test]
    fn feature_vector_of_alternating_word() {
        let features = feature_vector(&w("A B A B"), 2).unwrap();
        assert_eq!(features.count(&WordClass::empty()), 1);
        assert_eq!(features.count(&class("A* A*")), 2);
        assert_eq!(features.count(&class("A* B* A* B*")), 1);
        assert_eq!(features.counts().values().sum::<u64>(), 4);
    }

    #[test]
    fn feature_vector_of_chain_words() {
        for i in 1..=5usize {
            let features = feature_vector(&chain_word(i), 2).unwrap();
            assert_eq!(features.count(&class("A* A*")), i as u64);
            assert_eq!(features.count(&class("A* A* B* B*")), (i * (i - 1) / 2) as u64);
        }
    }

    #[test]
    fn subset_counts_are_binomial() {
        let word = w("A B C A C B");
        let n = word.letter_count();
        let features = feature_vector(&word, n).unwrap();
        let mut by_size = vec![0u64; n + 1];
        for (class, count) in features.counts() {
            by_size[class.letter_count()] += count;
        }
        assert_eq!(by_size, vec![1, 3, 3, 1]);
        assert_eq!(features.counts().values().sum::<u64>(), 1 << n);
    }

    #[test]
    fn degree_one_closed_form() {
        let t = table(1, &[("", rational(7, 3)), ("A A", rational(-2, 5))]);
        for i in 0..=6usize {
            let expected = rational(7, 3) + rational(i as i64, 1) * rational(-2, 5);
            assert_eq!(evaluate(&t, &chain_word(i)), expected);
        }
    }

    #[test]
    fn evaluate_on_singular_words() {
        let t = table(1, &[("", rational(3, 1)), ("A A", rational(5, 1))]);
        // Fully singular word: direct lookup.
        assert_eq!(evaluate(&t, &w("A* A*")), rational(5, 1));
        // More singular letters than the degree: zero.
        assert_eq!(evaluate(&t, &w("A* B* A* B*")), rational(0, 1));
        // One singular letter inside a larger word: sums over supersets.
        assert_eq!(evaluate(&t, &w("A* B A* B")), rational(5, 1));
    }

    #[test]
    fn skein_relation_holds() {
        let t = table(
            2,
            &[
                ("", rational(1, 2)),
                ("A A", rational(-1, 2)),
                ("-A -A", rational(3, 4)),
                ("A B A B", rational(2, 1)),
                ("A A B B", rational(-5, 3)),
            ],
        );
        let word = w("A B C A C B");
        for (&id, _) in word.letters() {
            let mut starred = word.clone();
            starred = {
                let mut letters = starred.letters().clone();
                letters.get_mut(&id).unwrap().singular = true;
                SignedWord::new(starred.occurrences().to_vec(), letters).unwrap()
            };
            let keep: Vec<LetterId> =
                word.letters().keys().copied().filter(|&k| k != id).collect();
            let deleted = word.subword(&keep).unwrap();
            assert_eq!(evaluate(&t, &starred), evaluate(&t, &word) - evaluate(&t, &deleted));
        }
    }

    #[test]
    fn strict_mode_flags_missing_symbols() {
        let t = table(1, &[("", rational(1, 1))]);
        assert_eq!(evaluate(&t, &w("A A")), rational(1, 1));
        assert!(matches!(evaluate_strict(&t, &w("A A")), Err(Error::MissingSymbol { .. })));
    }

    #[test]
    fn table_validation() {
        let not_singular = BTreeMap::from([(class("A A"), rational(1, 1))]);
        assert!(matches!(SymbolTable::new(2, not_singular), Err(Error::BadTable { .. })));
        let too_long = BTreeMap::from([(class("A* A* B* B*"), rational(1, 1))]);
        assert!(matches!(SymbolTable::new(1, too_long), Err(Error::BadTable { .. })));
    }

    #[test]
    fn table_json_round_trip() {
        let t = table(
            2,
            &[("", rational(1, 2)), ("A A", rational(-1, 2)), ("A -B A -B", rational(3, 1))],
        );
        let json = t.to_json();
        assert_eq!(json["phi"], "1/2");
        assert_eq!(json["values"]["A* A*"], "-1/2");
        let back = SymbolTable::from_json(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn arnold_values_on_small_words() {
        let phi = arnold_invariants(&w("")).unwrap();
        assert_eq!(phi.j_plus, rational(1, 2));
        assert_eq!(phi.j_minus, rational(1, 2));
        assert_eq!(phi.strangeness, rational(-1, 4));

        let kink = arnold_invariants(&w("A A")).unwrap();
        assert_eq!(kink.j_plus, rational(0, 1));
        assert_eq!(kink.j_minus, rational(-1, 1));
        assert_eq!(kink.strangeness, rational(0, 1));
    }

    #[test]
    fn arnold_rejects_or_flags_non_spherical_words() {
        assert!(matches!(
            arnold_invariants(&w("A -B A -B")),
            Err(Error::NotSpherical { genus: 1, .. })
        ));
        let (values, spherical) = arnold_invariants_unchecked(&w("A -B A -B")).unwrap();
        assert!(!spherical);
        // The move-1 image of the empty word: J+s jumps by 2.
        assert_eq!(values.j_plus, rational(5, 2));
        assert_eq!(values.j_minus, rational(1, 2));
        assert_eq!(values.strangeness, rational(-1, 4));
    }

    #[test]
    fn planar_correction() {
        let at_rot_one = planar_invariants(&w(""), 1).unwrap();
        assert_eq!(at_rot_one.j_plus, rational(0, 1));
        assert_eq!(at_rot_one.j_minus, rational(0, 1));
        assert_eq!(at_rot_one.strangeness, rational(0, 1));

        let at_rot_zero = planar_invariants(&w(""), 0).unwrap();
        assert_eq!(at_rot_zero.j_plus, rational(1, 2));
        assert_eq!(at_rot_zero.strangeness, rational(-1, 4));

        let base = planar_invariants(&w("A A"), 0).unwrap();
        for rot in [-3i64, -1, 2, 5] {
            let shifted = planar_invariants(&w("A A"), rot).unwrap();
            assert_eq!(shifted.j_plus, &base.j_plus - rational(rot * rot, 2));
            assert_eq!(shifted.j_minus, &base.j_minus - rational(rot * rot, 2));
            assert_eq!(shifted.strangeness, &base.strangeness + rational(rot * rot, 4));
        }
    }

    #[test]
    fn display_formats() {
        let values = arnold_invariants(&w("A A")).unwrap();
        assert_eq!(values.to_string(), "J+s = 0, J-s = -1, St_s = 0");
    }
}
