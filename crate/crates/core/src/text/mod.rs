//! From a labeled document corpus to a term-document count matrix.
//!
//! Rows are terms (in lexicographic order), columns are documents (in corpus
//! order). Feature selection and weighting operate on that matrix.

mod corpus;
mod features;
mod stem;
mod tokenize;
mod weighting;

pub use corpus::{build_matrix, build_matrix_with, Corpus, Document, TermDocument, Vocabulary};
pub use features::{mutual_information_scores, select_features, FeatureSelector};
pub use stem::{Stemmer, SuffixStemmer};
pub use tokenize::{tokenize, tokenize_with, TokenizerConfig};
pub use weighting::{apply_weighting, WeightingScheme};
