use libm::log2;

use crate::linalg::SparseMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightingScheme {
    #[default]
    RawCount,
    /// `min(w_ij, max_count)`
    Trimmed(u32),
    /// `tf · log₂(n / df)`; terms present in every document get weight zero.
    TfIdf,
}

/// Reweights a raw count matrix (terms × documents). Entries that become
/// zero are dropped.
pub fn apply_weighting(m: &SparseMatrix, scheme: WeightingScheme) -> Result<SparseMatrix> {
    match scheme {
        WeightingScheme::RawCount => Ok(m.clone()),
        WeightingScheme::Trimmed(0) => Err(Error::InvalidConfig(
            "Trimmed needs a maximum of at least 1".into(),
        )),
        WeightingScheme::Trimmed(max) => Ok(m.map_entries(|_, _, v| v.min(f64::from(max)))),
        WeightingScheme::TfIdf => {
            let n = m.n_cols() as f64;
            let idf: alloc::vec::Vec<f64> = (0..m.n_rows())
                .map(|i| {
                    let df = m.row(i).1.iter().filter(|&&v| v > 0.0).count() as f64;
                    if df > 0.0 {
                        log2(n / df)
                    } else {
                        0.0
                    }
                })
                .collect();
            Ok(m.map_entries(|i, _, v| v * idf[i]).pruned())
        }
    }
}
