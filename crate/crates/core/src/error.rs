use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word entries must be positive integers (found 0 at position {position})")]
    NonPositiveEntry { position: usize },

    #[error("not a permutation of 1..{n}: {reason}")]
    NotPermutation { n: usize, reason: String },

    #[error("index {index} outside the ambient range [1, {max}]")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("wrong multiset: expected {k} copies of each of 1..{n}, {reason}")]
    WrongMultiset { n: usize, k: usize, reason: String },

    #[error("not a ballot sequence: prefix of length {position} has more {row_below}s than {row_above}s")]
    NotBallot {
        position: usize,
        row_above: usize,
        row_below: usize,
    },

    #[error("row/column order violated at row {row}, column {col}")]
    GridOrder { row: usize, col: usize },

    #[error("malformed grid: {0}")]
    GridShape(String),

    #[error("not canon: voice {first} is {first_voice} but voice {other} is {other_voice}")]
    NotCanon {
        first: usize,
        first_voice: String,
        other: usize,
        other_voice: String,
    },

    #[error("rows must be non-adjacent (got r={r}, s={s})")]
    AdjacentRows { r: usize, s: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size cap exceeded: {what} = {value} exceeds the bound {bound}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
