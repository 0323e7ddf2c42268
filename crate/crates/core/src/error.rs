use thiserror::Error;

/// Errors raised by poset construction, labeling validation and the counters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} entries, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("element id {id} out of range for a poset of size {n}")]
    ElementOutOfRange { id: usize, n: usize },

    #[error("cover relation contains a cycle through element {0}")]
    Cycle(usize),

    #[error("posets are limited to {max} elements, got {n}")]
    TooManyElements { n: usize, max: usize },

    #[error("values are not injective: {0} appears more than once")]
    NotInjective(i64),

    #[error("labels are not a permutation of 1..={0}")]
    NotPermutation(usize),

    #[error("toggle index {index} outside 1..={max}")]
    ToggleIndex { index: usize, max: usize },

    #[error("exhaustive sweep over {n}! labelings exceeds the cap n <= {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("k = {k} is outside 0..={max}")]
    KOutOfRange { k: usize, max: usize },

    #[error("invalid rooted tree: {0}")]
    InvalidTree(String),

    #[error("invalid inflation: {0}")]
    InvalidInflation(String),

    #[error("tree is not reduced: vertex {0} has exactly one child")]
    NotReduced(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("closed form produced a non-integral value {0}")]
    NonIntegral(String),

    #[error("count does not fit the chosen scalar type")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
