//! File formats: MatrixMarket matrices, corpora, TSV tables, cluster trees
//! and PGM images.

pub mod corpus;
pub mod matrix_market;
pub mod pgm;
pub mod tables;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Core(#[from] bicut_core::Error),
}
