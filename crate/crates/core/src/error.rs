use thiserror::Error;

use crate::tube::ConditionTag;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("rational {0:?} is not in canonical \"p/q\" form")]
    NonCanonicalRational(String),
    #[error("rational {0:?} has a zero denominator")]
    ZeroDenominator(String),
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),

    #[error("lorentz scale factor must be nonzero")]
    ZeroLambda,
    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("configuration has no difference vectors")]
    EmptyConfig,
    #[error("configuration has a nonzero imaginary part at difference {0}")]
    NotRealConfig(usize),
    #[error("expected {expected} difference vector(s), got {got}")]
    WrongArity { expected: usize, got: usize },

    #[error("condition {0} has a zero coordinate")]
    DegenerateCoordinate(ConditionTag),
    #[error("cell formulas need m >= 2, got {0}")]
    BadArity(usize),
    #[error("configuration is not on a boundary stratum")]
    NotOnBoundary,

    #[error("m = {m} exceeds the permutation guard {max}")]
    ArityGuard { m: usize, max: usize },
    #[error("points {0} and {1} are not space-like separated")]
    NotTotallySpacelike(usize, usize),
    #[error("probe {0} does not satisfy the coverage formula")]
    ProbeOutsideFormula(usize),
    #[error("probe {index} has {got} points, formula expects {expected}")]
    ProbeArity { index: usize, expected: usize, got: usize },

    #[error("space-time dimension must be >= 2, got {0}")]
    BadDimension(u64),
    #[error("function order must be >= 2, got {0}")]
    BadOrder(u64),
    #[error("configuration is not a member of the permuted union")]
    NotMember,
    #[error("r must satisfy 0 < r < m (r = {r}, m = {m})")]
    BadR { r: usize, m: usize },

    #[error("cone base {0} is empty")]
    EmptyBase(usize),
    #[error("cone base {0} has a face that is not aligned with the light-cone axes")]
    UnalignedBase(usize),
    #[error("permutation acts on {got} points, expected {expected}")]
    PermutationSize { expected: usize, got: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
