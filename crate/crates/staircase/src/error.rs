//! Crate-wide error type.

use crate::lattice::LatticePoint;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ambient dimension {0} is outside the supported range 1..=8")]
    UnsupportedDimension(usize),

    #[error("set is not downward closed: contains {point} but not {missing}")]
    NotDownwardClosed {
        point: LatticePoint,
        missing: LatticePoint,
    },

    #[error("invalid direction {0:?}: {1}")]
    InvalidDirection(Vec<i64>, &'static str),

    #[error("{p} and {q} do not lie on one line of the given direction")]
    NotOnSameLine { p: LatticePoint, q: LatticePoint },

    #[error("parts are not pairwise disjoint: {0} appears twice")]
    NotDisjoint(LatticePoint),

    #[error("unsupported case s={s}, d={d}: excluded by the chain lemma hypotheses")]
    UnsupportedCase { s: u32, d: usize },

    #[error("no chain found within the search budget")]
    NotFound,

    #[error("bad hypotheses: {0}")]
    BadHypotheses(String),

    #[error("internal contradiction: {0}")]
    InternalContradiction(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("line {0:?} does not meet the non-negative orthant")]
    EmptyLine(Vec<i64>),

    #[error("singular leading minor (det Q = 0) on line {line_key:?}: {detail}")]
    SingularQ { line_key: Vec<i64>, detail: String },

    #[error("invalid height function: value rises from {lower:?} to {upper:?}")]
    NotMonotone { lower: Vec<u32>, upper: Vec<u32> },

    #[error("field too small: modulus {modulus} must exceed the degree {degree}")]
    FieldTooSmall { modulus: u64, degree: u32 },

    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),

    #[error("duplicate condition points")]
    DuplicatePoints,

    #[error("condition matrix too large: {rows}x{cols} exceeds {bound} entries")]
    MatrixTooLarge {
        rows: usize,
        cols: usize,
        bound: usize,
    },

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
