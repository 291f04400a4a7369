use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid sparse structure: {0}")]
    InvalidStructure(String),

    #[error("negative or non-finite weight {value} at ({row}, {col})")]
    InvalidWeight { row: usize, col: usize, value: f64 },

    #[error("matrix has no nonzero entries")]
    ZeroMatrix,

    #[error("requested {requested} singular triplets but the matrix admits at most {available}")]
    TooManyTriplets { requested: usize, available: usize },

    #[error("Lanczos did not converge after {iterations} steps (best relative residual {best_residual:e})")]
    NoConvergence {
        iterations: usize,
        best_residual: f64,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("vertex {index} out of range on side {side} ({len} vertices)")]
    IndexOutOfRange {
        side: char,
        index: usize,
        len: usize,
    },

    #[error("vertex {index} on side {side} has zero degree")]
    ZeroDegree { side: char, index: usize },

    #[error("node cannot be split: {0}")]
    Unsplittable(String),

    #[error("instance too large for exhaustive search: {vertices} vertices (limit {limit})")]
    TooLarge { vertices: usize, limit: usize },

    #[error("duplicate document id {0:?}")]
    DuplicateDocument(String),

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("vocabulary is empty after tokenization")]
    EmptyVocabulary,

    #[error("feature selection {0} removed every term")]
    NoFeatures(String),

    #[error("confusion matrix is {rows}x{cols}; optimal matching needs a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid label {label} for k = {k}")]
    InvalidLabel { label: usize, k: usize },
}
