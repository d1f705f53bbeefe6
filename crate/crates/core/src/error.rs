use thiserror::Error;

/// Errors raised while parsing the textual bit-matrix format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: missing or malformed header, expected `rows cols`")]
    BadHeader { line: usize },
    #[error("line {line}: header declares {rows}x{cols}, dimensions must be at least 1")]
    EmptyDimension {
        line: usize,
        rows: usize,
        cols: usize,
    },
    #[error("line {line}: row has {found} entries, expected {expected}")]
    RaggedRow {
        line: usize,
        found: usize,
        expected: usize,
    },
    #[error("line {line}: invalid character {ch:?}, expected '0' or '1'")]
    BadChar { line: usize, ch: char },
    #[error("header declares {expected} rows but {found} were given")]
    RowCountMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{q} is not a prime power")]
    NotPrimePower { q: u64 },

    #[error("field order {q} is outside the supported range 2..=64")]
    FieldTooLarge { q: u64 },

    #[error("code dimension {k} exceeds the enumeration limit {limit}")]
    DimensionTooLarge { k: usize, limit: usize },

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("weight distribution is not valid: {0}")]
    InvalidDistribution(String),

    #[error("matrix A_{index} has rank {rank}, expected {expected}")]
    FunctionalRank {
        index: usize,
        rank: usize,
        expected: usize,
    },

    #[error("stacked matrices A_{i} and A_{j} have rank {rank}, expected {expected}")]
    FunctionalPairRank {
        i: usize,
        j: usize,
        rank: usize,
        expected: usize,
    },

    #[error("divisibility requirement violated: {0}")]
    Divisibility(String),

    #[error("oracle failed: {0}")]
    Oracle(String),

    #[error("bound not applicable: {0}")]
    NotApplicable(String),

    #[error("simplex iteration limit of {limit} pivots exceeded")]
    IterationLimit { limit: usize },

    #[error("no code exists under the LP relaxation (infeasible model)")]
    NoCodeUnderRelaxation,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("output failed: {0}")]
    Output(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
