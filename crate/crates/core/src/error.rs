use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("set must be non-empty")]
    EmptySet,
    #[error("elements must be strictly increasing (position {0})")]
    NotIncreasing(usize),
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("transposition ({0} {0}) is degenerate")]
    DegenerateTransposition(usize),
    #[error("index {0} is used by more than one transposition")]
    OverlappingIndices(usize),
    #[error("{what}: {actual} exceeds the limit {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: u128,
        actual: u128,
    },
    #[error("k = {0} is not supported")]
    UnsupportedK(usize),
    #[error("need at least {needed} elements, found {found}")]
    TooFewElements { needed: usize, found: usize },
    #[error("set contains zero; strip it first")]
    ContainsZero,
    #[error("element {0} is not positive")]
    NonPositive(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("injectivity violated: {0}")]
    InjectivityViolation(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("instance too small: {0}")]
    InstanceTooSmall(String),
    #[error("pool exhausted at step {step}: {available} candidates, {required} required")]
    PoolExhausted {
        step: usize,
        available: usize,
        required: usize,
    },
    #[error("no acceptable outcome after {attempts} attempts (last energy {last_energy})")]
    RetriesExhausted { attempts: usize, last_energy: u128 },
}
