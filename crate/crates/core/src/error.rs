use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("entry {value} is not reduced modulo {p}")]
    UnreducedEntry { value: u64, p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {p} must exceed n(n+1) = {bound} for n = {n}")]
    ModulusTooSmall { p: u64, n: usize, bound: u128 },
    #[error("trial count must be at least 1")]
    ZeroTrials,
    #[error("expected {expected} polynomial coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("brute-force oracle refuses n = {n} (limit {limit}); pass the override to force it")]
    OracleGuard { n: usize, limit: usize },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("enumeration of n = {n} exceeds the ceiling of {limit} vertices")]
    EnumerationCeiling { n: usize, limit: usize },
    #[error("mixed graph sizes in corpus: {0} and {1}")]
    MixedSizes(usize, usize),
    #[error("stress budget must be at least 1")]
    ZeroBudget,
    #[error("diagonal perturbation value must be non-zero")]
    ZeroPerturbation,
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
}
