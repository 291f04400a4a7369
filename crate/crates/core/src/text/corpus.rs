use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::stem::{Stemmer, SuffixStemmer};
use super::tokenize::{tokenize_with, TokenizerConfig};
use crate::linalg::SparseMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub label: Option<String>,
    pub text: String,
}

impl Document {
    pub fn new(id: impl Into<String>, label: Option<&str>, text: impl Into<String>) -> Self {
        Document {
            id: id.into(),
            label: label.map(Into::into),
            text: text.into(),
        }
    }
}

/// Documents with unique ids, in a fixed order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    documents: Vec<Document>,
}

impl Corpus {
    pub fn new(documents: Vec<Document>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for d in &documents {
            if !seen.insert(d.id.as_str()) {
                return Err(Error::DuplicateDocument(d.id.clone()));
            }
        }
        Ok(Corpus { documents })
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// Distinct labels in lexicographic order; unlabeled documents are skipped.
    pub fn labels(&self) -> Vec<&str> {
        let set: BTreeSet<&str> = self
            .documents
            .iter()
            .filter_map(|d| d.label.as_deref())
            .collect();
        set.into_iter().collect()
    }

    /// Sub-corpus of the given positions, in that order.
    pub fn select(&self, positions: &[usize]) -> Result<Corpus> {
        let docs = positions
            .iter()
            .map(|&p| {
                self.documents
                    .get(p)
                    .cloned()
                    .ok_or(Error::IndexOutOfRange {
                        side: 'Y',
                        index: p,
                        len: self.documents.len(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Corpus::new(docs)
    }
}

/// Ordered term list with its inverse mapping.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl Vocabulary {
    /// Terms are deduplicated and sorted.
    pub fn new<I: IntoIterator<Item = String>>(terms: I) -> Self {
        let set: BTreeSet<String> = terms.into_iter().collect();
        Self::from_sorted(set.into_iter().collect())
    }

    fn from_sorted(terms: Vec<String>) -> Self {
        let index = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Vocabulary { terms, index }
    }

    /// Keeps the terms at `rows` (ascending), preserving their order.
    pub(crate) fn restrict(&self, rows: &[usize]) -> Self {
        Self::from_sorted(rows.iter().map(|&r| self.terms[r].clone()).collect())
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn get(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermDocument {
    /// Raw counts, terms × documents.
    pub matrix: SparseMatrix,
    pub vocabulary: Vocabulary,
    /// Columns with no tokens; they are stripped when the graph is built.
    pub empty_documents: Vec<usize>,
}

/// Raw term counts with the default [`SuffixStemmer`].
pub fn build_matrix(corpus: &Corpus, cfg: &TokenizerConfig) -> Result<TermDocument> {
    build_matrix_with(corpus, cfg, &SuffixStemmer)
}

pub fn build_matrix_with(
    corpus: &Corpus,
    cfg: &TokenizerConfig,
    stemmer: &dyn Stemmer,
) -> Result<TermDocument> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let counts: Vec<BTreeMap<String, usize>> = corpus
        .documents()
        .iter()
        .map(|d| {
            let mut c = BTreeMap::new();
            for t in tokenize_with(&d.text, cfg, stemmer) {
                *c.entry(t).or_insert(0) += 1;
            }
            c
        })
        .collect();
    let vocabulary = Vocabulary::new(counts.iter().flat_map(|c| c.keys().cloned()));
    if vocabulary.is_empty() {
        return Err(Error::EmptyVocabulary);
    }
    let empty_documents = counts
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_empty())
        .map(|(j, _)| j)
        .collect();
    let entries = counts
        .iter()
        .enumerate()
        .flat_map(|(j, c)| c.iter().map(move |(t, &n)| (t, j, n)))
        .map(|(t, j, n)| (vocabulary.get(t).expect("term was collected"), j, n as f64));
    let matrix = SparseMatrix::from_triplets(vocabulary.len(), corpus.len(), entries)?;
    Ok(TermDocument {
        matrix,
        vocabulary,
        empty_documents,
    })
}
