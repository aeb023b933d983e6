use thiserror::Error;

/// Errors produced by the fuzzy preference toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("trapezoid components not ordered: ({a}, {b}, {c}, {d})")]
    NotTrapezoid { a: f64, b: f64, c: f64, d: f64 },

    #[error("non-finite component in fuzzy number")]
    NonFinite,

    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(f64),

    #[error("operation requires strictly positive components, got ({a}, {b}, {c}, {d})")]
    NotPositive { a: f64, b: f64, c: f64, d: f64 },

    #[error("invalid magnitude weights ({w1}, {w2}): need w1, w2 > 0 and 2(w1 + w2) = 1")]
    InvalidMagWeights { w1: f64, w2: f64 },

    #[error("invalid neutral element: {0}")]
    InvalidNeutral(String),

    #[error("scale must be an integer >= 2, got {0}")]
    InvalidScale(u32),

    #[error("value {value} outside the admissible range [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("empty matrix")]
    Empty,

    #[error("entry ({row}, {col}): {reason}")]
    InvalidEntry {
        row: usize,
        col: usize,
        reason: String,
    },

    #[error("entry ({row}, {col}) is not the {relation} of entry ({col}, {row})")]
    Reciprocity {
        row: usize,
        col: usize,
        relation: &'static str,
    },

    #[error("diagonal entry ({k}, {k}) differs from the neutral element")]
    Diagonal { k: usize },

    #[error("relation component leaves [0, 1] at entry ({row}, {col}); utilities too spread for this neutral element")]
    OutOfUnitInterval { row: usize, col: usize },

    #[error("relation is not consistent (max violation {max_violation:e})")]
    NotConsistent { max_violation: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("relations do not share the same neutral element")]
    NeutralMismatch,

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("simplex iteration limit ({0}) exceeded")]
    IterationLimit(usize),

    #[error("criterion {index}: {source}")]
    Criterion {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
