use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field order {p}^{k} exceeds the cap {cap}")]
    FieldTooLarge { p: u64, k: u32, cap: u64 },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("elements belong to different fields ({0} vs {1})")]
    MixedFields(String, String),

    #[error("zero has no multiplicative inverse")]
    DivisionByZero,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("{what} {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },

    #[error("element {0} is not in the group")]
    NotInGroup(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group is not pi-separable for pi = {{{0}}}")]
    NotPiSeparable(String),

    #[error("search budget of {budget} steps exhausted: {what}")]
    BudgetExhausted { what: String, budget: u64 },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid pi-set: {0}")]
    InvalidPiSet(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
