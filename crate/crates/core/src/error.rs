use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An identifier occurred a number of times different from two.
    #[error("letter `{name}` occurs {count} times, expected exactly 2")]
    LetterCount { name: String, count: usize },

    /// The two occurrences of one identifier disagree on sign or singular mark.
    #[error("letter `{name}` carries conflicting sign or singular markers")]
    SignConflict { name: String },

    /// Malformed token in the word grammar.
    #[error("malformed token `{token}`")]
    Syntax { token: String },

    /// A referenced letter id is not present in the word.
    #[error("letter id {id} is not a letter of the word")]
    UnknownLetter { id: u32 },

    /// An enumeration or solver guard was exceeded.
    #[error("{what} = {requested} exceeds the guard {limit} (raise the limit to override)")]
    LimitExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    /// The operation is defined only on non-singular words.
    #[error("operation is not defined on words with singular letters")]
    SingularUnsupported,

    /// Strict-mode invariant evaluation on a word of positive genus.
    #[error("word `{word}` has genus {genus}; spherical invariants do not apply")]
    NotSpherical { word: String, genus: usize },

    /// Strict-mode symbol lookup of a class absent from the table.
    #[error("symbol class `{class}` is missing from the table")]
    MissingSymbol { class: String },

    /// A move site no longer matches the word it is applied to.
    #[error("move site does not match the word: {reason}")]
    InvalidSite { reason: String },

    /// A constraint system admits no solution; the witness lists a minimal
    /// inconsistent subset of constraint descriptions.
    #[error("constraint system is inconsistent; minimal witness: {witness:?}")]
    Inconsistent { witness: Vec<String> },

    /// Malformed symbol table file.
    #[error("bad symbol table: {reason}")]
    BadTable { reason: String },
}
