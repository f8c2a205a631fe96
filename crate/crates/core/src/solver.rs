//! Exact rational linear algebra over symbol values.
//!
//! Mechanizes the linear arguments behind the invariant spaces: the
//! dimension of the space of order-`n` cyclic invariants, completion of
//! partially specified symbol tables from move-behavior and normalization
//! constraints, and the completeness check for cyclic classes.
//!
//! Rows are deduplicated and sorted into a canonical order before reduction,
//! and pivoting is deterministic (first nonzero column, smallest row index),
//! so reduced forms and reports are reproducible.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::cyclic::{cyclic_canonical, shift, shift_orbit};
use crate::invariants::{feature_vector, FeatureVector, SymbolTable};
use crate::moves::{apply, find_sites, Direction, MoveKind, SignRule};
use crate::surface::genus;
use crate::word::{enumerate_words, SignedWord, WordClass, DEFAULT_ENUMERATION_LIMIT};
use crate::{Error, Rational};

/// Default guards: invariant-space degree, constraint horizon, and the
/// completeness degree. A caller-supplied limit overrides all of them.
const DEFAULT_DEGREE_GUARD: usize = 2;
const DEFAULT_HORIZON_GUARD: usize = 5;
const DEFAULT_COMPLETENESS_GUARD: usize = 3;

/// Which words generate constraints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    All,
    Spherical,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::All => write!(f, "all"),
            Domain::Spherical => write!(f, "spherical"),
        }
    }
}

/// Forward move deltas used when completing a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveDeltas {
    pub move1: Rational,
    pub move2: Rational,
    pub move3: Rational,
}

impl MoveDeltas {
    /// The deltas of the three spherical invariants, in table order.
    pub fn arnold() -> [MoveDeltas; 3] {
        let r = |n: i64| Rational::from_integer(n.into());
        [
            MoveDeltas { move1: r(2), move2: r(0), move3: r(0) },
            MoveDeltas { move1: r(0), move2: r(-2), move3: r(0) },
            MoveDeltas { move1: r(0), move2: r(0), move3: r(1) },
        ]
    }

    fn for_kind(&self, kind: MoveKind) -> &Rational {
        match kind {
            MoveKind::One => &self.move1,
            MoveKind::Two => &self.move2,
            MoveKind::Three => &self.move3,
        }
    }
}

/// The unknowns of every system here: canonical fully singular classes of up
/// to `degree` letters, the empty class first.
pub fn singular_basis(degree: usize, limit: Option<usize>) -> Result<Vec<WordClass>, Error> {
    let enum_limit = limit.unwrap_or(DEFAULT_ENUMERATION_LIMIT).max(degree);
    let mut basis = Vec::new();
    for n in 0..=degree {
        for class in enumerate_words(n, true, enum_limit)? {
            basis.push(class.word().starred().canonicalize());
        }
    }
    Ok(basis)
}

// ---------------------------------------------------------------------------
// Labeled exact linear systems
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Rational>,
    rhs: Rational,
    label: String,
    provenance: BTreeSet<usize>,
}

/// A dense exact-rational constraint matrix with labeled rows.
#[derive(Clone, Debug, Default)]
pub struct RationalMatrix {
    cols: usize,
    rows: Vec<Row>,
}

/// Outcome of solving a labeled affine system.
#[derive(Clone, Debug)]
pub enum LinearOutcome {
    Unique(Vec<Rational>),
    Underdetermined { particular: Vec<Rational>, basis: Vec<Vec<Rational>> },
    Inconsistent { witness: Vec<String> },
}

impl RationalMatrix {
    pub fn new(cols: usize) -> RationalMatrix {
        RationalMatrix { cols, rows: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, rhs: Rational, label: String) {
        debug_assert_eq!(coeffs.len(), self.cols);
        let provenance = BTreeSet::from([self.rows.len()]);
        self.rows.push(Row { coeffs, rhs, label, provenance });
    }

    /// Drops duplicate rows and sorts the rest into the canonical order.
    fn canonical_rows(&self) -> Vec<Row> {
        let mut seen: BTreeMap<(Vec<Rational>, Rational), Row> = BTreeMap::new();
        for row in &self.rows {
            seen.entry((row.coeffs.clone(), row.rhs.clone())).or_insert_with(|| row.clone());
        }
        seen.into_values().collect()
    }

    /// Reduced row echelon form with deterministic pivoting. Returns the
    /// pivot columns; `rows` afterwards holds the nonzero rows first.
    fn rref(rows: &mut Vec<Row>, cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..cols {
            let Some(found) = (next..rows.len()).find(|&i| !rows[i].coeffs[col].is_zero())
            else {
                continue;
            };
            rows.swap(next, found);
            let lead = rows[next].coeffs[col].clone();
            for c in &mut rows[next].coeffs {
                *c /= &lead;
            }
            rows[next].rhs /= &lead;
            let pivot = rows[next].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == next || row.coeffs[col].is_zero() {
                    continue;
                }
                let factor = row.coeffs[col].clone();
                for (c, p) in row.coeffs.iter_mut().zip(&pivot.coeffs) {
                    *c -= &factor * p;
                }
                row.rhs -= &factor * &pivot.rhs;
                row.provenance.extend(pivot.provenance.iter().copied());
            }
            pivots.push(col);
            next += 1;
        }
        pivots
    }

    /// Rank of the coefficient part.
    pub fn rank(&self) -> usize {
        let mut rows = self.canonical_rows();
        for row in &mut rows {
            row.rhs = Rational::zero();
        }
        Self::rref(&mut rows, self.cols).len()
    }

    /// Solves the affine system.
    pub fn solve(&self) -> LinearOutcome {
        let originals = self.canonical_rows();
        let mut rows = originals.clone();
        let pivots = Self::rref(&mut rows, self.cols);

        if let Some(bad) = rows[pivots.len()..].iter().find(|r| !r.rhs.is_zero()) {
            let witness = self.minimal_witness(&originals, &bad.provenance);
            return LinearOutcome::Inconsistent { witness };
        }

        let mut particular = vec![Rational::zero(); self.cols];
        for (row, &col) in rows.iter().zip(&pivots) {
            particular[col] = row.rhs.clone();
        }
        if pivots.len() == self.cols {
            return LinearOutcome::Unique(particular);
        }

        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut direction = vec![Rational::zero(); self.cols];
            direction[free] = Rational::from_integer(1.into());
            for (row, &col) in rows.iter().zip(&pivots) {
                direction[col] = -row.coeffs[free].clone();
            }
            basis.push(direction);
        }
        LinearOutcome::Underdetermined { particular, basis }
    }

    /// Shrinks an inconsistent provenance set greedily until removing any
    /// one constraint restores consistency.
    fn minimal_witness(&self, canonical: &[Row], provenance: &BTreeSet<usize>) -> Vec<String> {
        let by_index: BTreeMap<usize, &Row> = canonical
            .iter()
            .flat_map(|row| row.provenance.iter().map(move |&i| (i, row)))
            .collect();
        let mut kept: Vec<usize> = provenance.iter().copied().collect();
        let inconsistent = |subset: &[usize]| {
            let mut rows: Vec<Row> =
                subset.iter().map(|i| (*by_index[i]).clone()).collect();
            let pivots = Self::rref(&mut rows, self.cols);
            rows[pivots.len()..].iter().any(|r| !r.rhs.is_zero())
        };
        debug_assert!(inconsistent(&kept));
        let mut i = 0;
        while i < kept.len() {
            let mut trial = kept.clone();
            trial.remove(i);
            if inconsistent(&trial) {
                kept = trial;
            } else {
                i += 1;
            }
        }
        kept.iter().map(|i| by_index[i].label.clone()).collect()
    }
}

// ---------------------------------------------------------------------------
// Invariant space dimensions
// ---------------------------------------------------------------------------

/// Dimension report of the order-`degree` invariant space, horizon by horizon.
#[derive(Clone, Debug)]
pub struct DimReport {
    pub degree: usize,
    pub domain: Domain,
    /// Solution-space dimension after imposing all shift constraints from
    /// words of length up to `2L`, for each `L` up to the horizon.
    pub dims_by_horizon: BTreeMap<usize, usize>,
    /// First horizon from which the dimension no longer changes.
    pub stabilized_at: Option<usize>,
    /// Basis of the solution space at the full horizon, one map per direction.
    pub basis: Vec<BTreeMap<WordClass, Rational>>,
}

impl DimReport {
    pub fn final_dim(&self) -> usize {
        *self.dims_by_horizon.values().last().expect("at least horizon 0")
    }

    pub fn to_json(&self) -> Value {
        let dims: Map<String, Value> = self
            .dims_by_horizon
            .iter()
            .map(|(l, d)| (l.to_string(), json!(d)))
            .collect();
        json!({
            "degree": self.degree,
            "domain": self.domain.to_string(),
            "dims_by_L": dims,
            "stabilized_at": self.stabilized_at,
            "free_directions": directions_json(&self.basis),
        })
    }
}

fn directions_json(directions: &[BTreeMap<WordClass, Rational>]) -> Value {
    let list: Vec<Value> = directions
        .iter()
        .map(|direction| {
            let map: Map<String, Value> = direction
                .iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(class, v)| (class.to_string(), Value::String(v.to_string())))
                .collect();
            Value::Object(map)
        })
        .collect();
    Value::Array(list)
}

/// Computes the dimension of the space of order-`degree` cyclic invariants:
/// unknowns are the symbol values on fully singular classes of up to
/// `degree` letters plus the empty word; constraints equate evaluation on
/// `w` and `shift(w)` for every word of length up to `2L` (restricted to
/// spherical words under [`Domain::Spherical`]).
pub fn invariant_space_dim(
    degree: usize,
    horizon: usize,
    domain: Domain,
    limit: Option<usize>,
) -> Result<DimReport, Error> {
    let degree_guard = limit.unwrap_or(DEFAULT_DEGREE_GUARD);
    if degree > degree_guard {
        return Err(Error::LimitExceeded { what: "degree", requested: degree, limit: degree_guard });
    }
    let horizon_guard = limit.unwrap_or(DEFAULT_HORIZON_GUARD);
    if horizon > horizon_guard {
        return Err(Error::LimitExceeded {
            what: "horizon",
            requested: horizon,
            limit: horizon_guard,
        });
    }

    let basis = singular_basis(degree, limit)?;
    let index: BTreeMap<&WordClass, usize> = basis.iter().zip(0..).map(|(c, i)| (c, i)).collect();
    let enum_limit = limit.unwrap_or(DEFAULT_ENUMERATION_LIMIT).max(horizon).max(degree);

    let mut matrix = RationalMatrix::new(basis.len());
    let mut dims = BTreeMap::from([(0, basis.len())]);
    for level in 1..=horizon {
        for class in enumerate_words(level, true, enum_limit)? {
            let word = class.word();
            if domain == Domain::Spherical && genus(word)? != 0 {
                continue;
            }
            let shifted = shift(word)?;
            let row = feature_difference(&shifted, word, degree, &index)?;
            matrix.push(row, Rational::zero(), format!("shift invariance of `{class}`"));
        }
        dims.insert(level, basis.len() - matrix.rank());
    }

    let final_dim = *dims.values().last().expect("horizon 0 exists");
    let stabilized_at = dims
        .iter()
        .rev()
        .take_while(|(_, &d)| d == final_dim)
        .map(|(&l, _)| l)
        .last()
        .filter(|&l| l < horizon || horizon == 0);

    let directions = match matrix.solve() {
        LinearOutcome::Unique(_) => Vec::new(),
        LinearOutcome::Underdetermined { basis: dirs, .. } => dirs
            .into_iter()
            .map(|d| basis.iter().cloned().zip(d).collect())
            .collect(),
        LinearOutcome::Inconsistent { .. } => unreachable!("homogeneous system"),
    };

    Ok(DimReport { degree, domain, dims_by_horizon: dims, stabilized_at, basis: directions })
}

fn feature_difference(
    plus: &SignedWord,
    minus: &SignedWord,
    degree: usize,
    index: &BTreeMap<&WordClass, usize>,
) -> Result<Vec<Rational>, Error> {
    let mut row = vec![Rational::zero(); index.len()];
    add_features(&mut row, &feature_vector(plus, degree)?, 1, index);
    add_features(&mut row, &feature_vector(minus, degree)?, -1, index);
    Ok(row)
}

fn add_features(
    row: &mut [Rational],
    features: &FeatureVector,
    scale: i64,
    index: &BTreeMap<&WordClass, usize>,
) {
    for (class, &count) in features.counts() {
        let slot = index[class];
        row[slot] += Rational::from_integer((scale * count as i64).into());
    }
}

// ---------------------------------------------------------------------------
// Symbol table completion
// ---------------------------------------------------------------------------

/// Result of a table completion.
#[derive(Clone, Debug)]
pub struct Completion {
    pub table: SymbolTable,
    /// Empty when the solution is unique; otherwise the free directions of
    /// the affine solution set.
    pub free_directions: Vec<BTreeMap<WordClass, Rational>>,
    pub constraint_count: usize,
    pub notes: Vec<String>,
}

impl Completion {
    pub fn is_unique(&self) -> bool {
        self.free_directions.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let mut json = self.table.to_json();
        let object = json.as_object_mut().expect("table json is an object");
        object.insert("unique".into(), json!(self.is_unique()));
        object.insert("constraints".into(), json!(self.constraint_count));
        object.insert("free_directions".into(), directions_json(&self.free_directions));
        object.insert("notes".into(), json!(self.notes));
        json
    }
}

/// Completes a partial symbol table against three constraint families:
/// the partial assignments themselves, the normalization values on the
/// chain words `w_i` for `i <= horizon`, and one move-delta equation per
/// forward move site on every spherical word of length up to `2 * horizon`
/// (move-3 sites under the uniform sign rule).
///
/// Returns the unique solution or the affine solution set's free directions;
/// an unsatisfiable system comes back as [`Error::Inconsistent`] carrying a
/// minimal witness.
pub fn complete_symbol_table(
    partial: &SymbolTable,
    deltas: &MoveDeltas,
    normalization: &dyn Fn(usize) -> Rational,
    horizon: usize,
    limit: Option<usize>,
) -> Result<Completion, Error> {
    let horizon_guard = limit.unwrap_or(DEFAULT_HORIZON_GUARD);
    if horizon > horizon_guard {
        return Err(Error::LimitExceeded {
            what: "horizon",
            requested: horizon,
            limit: horizon_guard,
        });
    }
    let degree = partial.degree();
    let basis = singular_basis(degree, limit)?;
    let index: BTreeMap<&WordClass, usize> = basis.iter().zip(0..).map(|(c, i)| (c, i)).collect();
    let enum_limit = limit.unwrap_or(DEFAULT_ENUMERATION_LIMIT).max(horizon).max(degree);
    let mut matrix = RationalMatrix::new(basis.len());

    for (class, value) in partial.entries() {
        let mut row = vec![Rational::zero(); basis.len()];
        row[index[class]] = Rational::from_integer(1.into());
        matrix.push(row, value.clone(), format!("partial value of `{class}`"));
    }

    for i in 1..=horizon {
        let chain = crate::invariants::chain_word(i);
        let mut row = vec![Rational::zero(); basis.len()];
        add_features(&mut row, &feature_vector(&chain, degree)?, 1, &index);
        matrix.push(row, normalization(i), format!("normalization on w_{i}"));
    }

    for level in 0..=horizon {
        for class in enumerate_words(level, true, enum_limit)? {
            let word = class.word();
            if genus(word)? != 0 {
                continue;
            }
            for kind in [MoveKind::One, MoveKind::Two, MoveKind::Three] {
                let sites = find_sites(word, kind, Direction::Forward, SignRule::Uniform)?;
                for (slot, site) in sites.iter().enumerate() {
                    let image = apply(word, site, SignRule::Uniform)?;
                    let row = feature_difference(&image, word, degree, &index)?;
                    matrix.push(
                        row,
                        deltas.for_kind(kind).clone(),
                        format!("{kind} fwd site {slot} on `{class}`"),
                    );
                }
            }
        }
    }

    let constraint_count = matrix.row_count();
    let (values, free) = match matrix.solve() {
        LinearOutcome::Inconsistent { witness } => return Err(Error::Inconsistent { witness }),
        LinearOutcome::Unique(values) => (values, Vec::new()),
        LinearOutcome::Underdetermined { particular, basis: dirs } => (
            particular,
            dirs.into_iter()
                .map(|d| basis.iter().cloned().zip(d).collect::<BTreeMap<_, _>>())
                .collect(),
        ),
    };

    let entries: BTreeMap<WordClass, Rational> = basis.iter().cloned().zip(values).collect();
    let table = SymbolTable::new(degree, entries)?;
    verify_completion(&matrix, &table, &basis);

    let notes = vec![format!(
        "phi entry {} fitted from the chain normalization; v(phi) = 0 is inconsistent with it \
         unless the normalization values shift accordingly",
        table.phi()
    )];
    Ok(Completion { table, free_directions: free, constraint_count, notes })
}

/// Bit-exact re-substitution of a completed table into every constraint row.
fn verify_completion(matrix: &RationalMatrix, table: &SymbolTable, basis: &[WordClass]) {
    for row in &matrix.rows {
        let mut sum = Rational::zero();
        for (coeff, class) in row.coeffs.iter().zip(basis) {
            if !coeff.is_zero() {
                sum += coeff * table.value(class).expect("completed table covers the basis");
            }
        }
        assert_eq!(sum, row.rhs, "completed table violates `{}`", row.label);
    }
}

// ---------------------------------------------------------------------------
// Completeness check
// ---------------------------------------------------------------------------

/// Verdict of the completeness check at one degree.
#[derive(Clone, Debug)]
pub struct CompletenessReport {
    pub degree: usize,
    pub class_count: usize,
    pub cyclic_class_count: usize,
    pub separated: bool,
    /// Pairs of cyclic-class representatives with equal orbit-averaged
    /// feature vectors, verbatim.
    pub collisions: Vec<(String, String)>,
}

impl CompletenessReport {
    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "classes": self.class_count,
            "cyclic_classes": self.cyclic_class_count,
            "separated": self.separated,
            "collisions": self.collisions.iter()
                .map(|(a, b)| json!([a, b]))
                .collect::<Vec<_>>(),
        })
    }
}

/// Checks that order-`degree` invariants separate the cyclic classes of
/// length up to `2 * degree`: distinct shift orbits must have distinct
/// orbit-averaged degree-`degree` feature vectors.
pub fn completeness_check(degree: usize, limit: Option<usize>) -> Result<CompletenessReport, Error> {
    let guard = limit.unwrap_or(DEFAULT_COMPLETENESS_GUARD);
    if degree > guard {
        return Err(Error::LimitExceeded { what: "completeness degree", requested: degree, limit: guard });
    }
    let enum_limit = limit.unwrap_or(DEFAULT_ENUMERATION_LIMIT).max(degree);

    let mut class_count = 0;
    let mut orbits: BTreeMap<WordClass, Vec<WordClass>> = BTreeMap::new();
    for n in 0..=degree {
        for class in enumerate_words(n, true, enum_limit)? {
            class_count += 1;
            let rep = cyclic_canonical(class.word())?.representative().clone();
            orbits.entry(rep).or_default().push(class);
        }
    }

    let mut averages: BTreeMap<Vec<(WordClass, Rational)>, String> = BTreeMap::new();
    let mut collisions = Vec::new();
    for (rep, members) in &orbits {
        debug_assert_eq!(members, &shift_orbit(rep.word())?);
        let size = Rational::from_integer((members.len() as i64).into());
        let mut average: BTreeMap<WordClass, Rational> = BTreeMap::new();
        for member in members {
            for (class, &count) in feature_vector(member.word(), degree)?.counts() {
                *average.entry(class.clone()).or_insert_with(Rational::zero) +=
                    Rational::from_integer(count.into()) / &size;
            }
        }
        let key: Vec<(WordClass, Rational)> = average.into_iter().collect();
        if let Some(previous) = averages.get(&key) {
            collisions.push((previous.clone(), rep.to_string()));
        } else {
            averages.insert(key, rep.to_string());
        }
    }

    Ok(CompletenessReport {
        degree,
        class_count,
        cyclic_class_count: orbits.len(),
        separated: collisions.is_empty(),
        collisions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::evaluate;
    use crate::word::parse;
    use crate::{rational, Rational};

    fn rat(n: i64, d: i64) -> Rational {
        rational(n, d)
    }

    #[test]
    fn rref_solves_a_unique_system() {
        let mut m = RationalMatrix::new(2);
        m.push(vec![rat(1, 1), rat(1, 1)], rat(3, 1), "sum".into());
        m.push(vec![rat(1, 1), rat(-1, 1)], rat(1, 1), "difference".into());
        match m.solve() {
            LinearOutcome::Unique(solution) => {
                assert_eq!(solution, vec![rat(2, 1), rat(1, 1)]);
            }
            other => panic!("expected unique, got {other:?}"),
        }
    }

    #[test]
    fn rref_reports_free_directions() {
        let mut m = RationalMatrix::new(3);
        m.push(vec![rat(1, 1), rat(1, 1), rat(0, 1)], rat(2, 1), "first".into());
        match m.solve() {
            LinearOutcome::Underdetermined { particular, basis } => {
                assert_eq!(particular[0], rat(2, 1));
                assert_eq!(basis.len(), 2);
                // Each direction annihilates the constraint.
                for direction in &basis {
                    assert!((&direction[0] + &direction[1]).is_zero());
                }
            }
            other => panic!("expected underdetermined, got {other:?}"),
        }
    }

    #[test]
    fn rref_finds_minimal_witnesses() {
        let mut m = RationalMatrix::new(2);
        m.push(vec![rat(1, 1), rat(0, 1)], rat(1, 1), "x = 1".into());
        m.push(vec![rat(0, 1), rat(1, 1)], rat(5, 1), "y = 5".into());
        m.push(vec![rat(1, 1), rat(0, 1)], rat(2, 1), "x = 2".into());
        match m.solve() {
            LinearOutcome::Inconsistent { witness } => {
                assert_eq!(witness, vec!["x = 1".to_string(), "x = 2".to_string()]);
            }
            other => panic!("expected inconsistent, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_rows_do_not_change_rank() {
        let mut m = RationalMatrix::new(2);
        for _ in 0..4 {
            m.push(vec![rat(2, 1), rat(4, 1)], rat(0, 1), "dup".into());
        }
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn singular_basis_sizes() {
        assert_eq!(singular_basis(0, None).unwrap().len(), 1);
        assert_eq!(singular_basis(1, None).unwrap().len(), 3);
        assert_eq!(singular_basis(2, None).unwrap().len(), 15);
    }

    #[test]
    fn dimension_of_order_zero_space() {
        let report = invariant_space_dim(0, 3, Domain::All, None).unwrap();
        assert!(report.dims_by_horizon.values().all(|&d| d == 1));
    }

    #[test]
    fn dimension_of_order_one_space() {
        let report = invariant_space_dim(1, 3, Domain::All, None).unwrap();
        assert_eq!(report.dims_by_horizon[&0], 3);
        for l in 1..=3 {
            assert_eq!(report.dims_by_horizon[&l], 2, "L = {l}");
        }
        assert_eq!(report.stabilized_at, Some(1));
    }

    #[test]
    fn guards_are_enforced() {
        assert!(matches!(
            invariant_space_dim(3, 2, Domain::All, None),
            Err(Error::LimitExceeded { .. })
        ));
        assert!(matches!(
            invariant_space_dim(1, 6, Domain::All, None),
            Err(Error::LimitExceeded { .. })
        ));
        assert!(matches!(completeness_check(4, None), Err(Error::LimitExceeded { .. })));
        assert!(completeness_check(1, Some(4)).is_ok());
    }

    #[test]
    fn completeness_at_degree_one() {
        let report = completeness_check(1, None).unwrap();
        assert_eq!(report.class_count, 3);
        assert_eq!(report.cyclic_class_count, 2);
        assert!(report.separated);
        assert!(report.collisions.is_empty());
    }

    #[test]
    fn completion_of_an_already_complete_table() {
        // Degree 1: v = n(w), i.e. phi = 0, both one-letter symbols = 1.
        let entries = [("", rat(0, 1)), ("A A", rat(1, 1)), ("-A -A", rat(1, 1))];
        let values = entries
            .iter()
            .map(|(t, v)| (parse(t).unwrap().starred().canonicalize(), v.clone()))
            .collect();
        let partial = SymbolTable::new(1, values).unwrap();
        let deltas = MoveDeltas { move1: rat(2, 1), move2: rat(2, 1), move3: rat(0, 1) };
        let normalization = |i: usize| rat(i as i64, 1);
        let completion =
            complete_symbol_table(&partial, &deltas, &normalization, 2, None).unwrap();
        assert!(completion.is_unique());
        assert_eq!(completion.table, partial);
        assert_eq!(evaluate(&completion.table, &parse("A -B -B A").unwrap()), rat(2, 1));
    }

    #[test]
    fn contradictory_partial_tables_are_rejected_with_a_witness() {
        // Forcing (AA)* = 0 against the letter-count normalization v(w_i) = i.
        let entries = [("", rat(0, 1)), ("A A", rat(0, 1))];
        let values = entries
            .iter()
            .map(|(t, v)| (parse(t).unwrap().starred().canonicalize(), v.clone()))
            .collect();
        let partial = SymbolTable::new(1, values).unwrap();
        let deltas = MoveDeltas { move1: rat(2, 1), move2: rat(2, 1), move3: rat(0, 1) };
        let normalization = |i: usize| rat(i as i64, 1);
        match complete_symbol_table(&partial, &deltas, &normalization, 2, None) {
            Err(Error::Inconsistent { witness }) => {
                assert!(!witness.is_empty());
                assert!(witness.len() <= 3, "witness should be small: {witness:?}");
            }
            other => panic!("expected Inconsistent, got {other:?}"),
        }
    }
}
