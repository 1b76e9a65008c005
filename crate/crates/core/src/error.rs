use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("facet references unknown label `{0}`")]
    UnknownLabel(String),
    #[error("label `{0}` lies in no facet")]
    IsolatedLabel(String),
    #[error("label `{0}` listed more than once")]
    DuplicateLabel(String),
    #[error("vertex set is not a face of the complex")]
    NotAFace,
    #[error("vertex {0} is not in the ground set")]
    UnknownVertex(usize),
    #[error("the boundary of the empty face is undefined")]
    EmptyFace,
    #[error("operation requires a nonvoid complex")]
    VoidComplex,
    #[error("{0} is not a prime modulus")]
    NonPrimeModulus(u64),
    #[error("degree cap {cap} is below the largest generator degree {generator_degree}")]
    CapTooSmall { cap: usize, generator_degree: usize },
    #[error("Betti table is truncated at internal degree {cap} (of {n})")]
    TruncatedTable { cap: usize, n: usize },
    #[error("{work} subsets exceed the sweep budget of {budget}")]
    BudgetExceeded { work: u128, budget: u128 },
    #[error("{what} out of range")]
    OutOfRange { what: String },
    #[error("h-vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{0}")]
    OutOfStatedRange(String),
    #[error("consistency violation: {0}")]
    ConsistencyViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
