use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use libm::log;

use super::corpus::Vocabulary;
use crate::linalg::SparseMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureSelector {
    /// Keep terms occurring at least this many times in total.
    MinCount(usize),
    /// Keep terms occurring in at least this many documents.
    MinDocFreq(usize),
    /// Keep the `k` terms with the highest mutual information.
    TopMutualInformation(usize),
}

impl core::fmt::Display for FeatureSelector {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FeatureSelector::MinCount(c) => write!(f, "MinCount({c})"),
            FeatureSelector::MinDocFreq(d) => write!(f, "MinDocFreq({d})"),
            FeatureSelector::TopMutualInformation(k) => write!(f, "TopMutualInformation({k})"),
        }
    }
}

/// Per-term mutual information (natural log) between the term and the
/// document, with `w_ij / s(W)` as the joint distribution:
/// `I(i) = Σ_j p_ij log(p_ij / (p_i p_j))`. Zero cells contribute nothing.
pub fn mutual_information_scores(m: &SparseMatrix) -> Vec<f64> {
    let total = m.total();
    if total <= 0.0 {
        return vec![0.0; m.n_rows()];
    }
    let row = m.row_sums();
    let col = m.col_sums();
    (0..m.n_rows())
        .map(|i| {
            let (cols, vals) = m.row(i);
            cols.iter()
                .zip(vals)
                .filter(|(_, &w)| w > 0.0)
                // p_ij / (p_i p_j) = w_ij s / (r_i c_j)
                .map(|(&j, &w)| (w / total) * log(w * total / (row[i] * col[j])))
                // an empty `sum` is -0.0, which would sort below 0.0
                .fold(0.0, |acc, x| acc + x)
        })
        .collect()
}

/// Filters the rows of `m` (and `vocab`) by `sel`. Kept rows stay in their
/// original order.
pub fn select_features(
    m: &SparseMatrix,
    vocab: &Vocabulary,
    sel: FeatureSelector,
) -> Result<(SparseMatrix, Vocabulary)> {
    if vocab.len() != m.n_rows() {
        return Err(Error::DimensionMismatch {
            expected: m.n_rows(),
            got: vocab.len(),
        });
    }
    let keep: Vec<usize> = match sel {
        FeatureSelector::MinCount(0)
        | FeatureSelector::MinDocFreq(0)
        | FeatureSelector::TopMutualInformation(0) => {
            return Err(Error::InvalidConfig(format!(
                "{sel}: threshold must be at least 1"
            )));
        }
        FeatureSelector::MinCount(c) => {
            let sums = m.row_sums();
            (0..m.n_rows()).filter(|&i| sums[i] >= c as f64).collect()
        }
        FeatureSelector::MinDocFreq(d) => (0..m.n_rows())
            .filter(|&i| m.row(i).1.iter().filter(|&&v| v > 0.0).count() >= d)
            .collect(),
        FeatureSelector::TopMutualInformation(k) => {
            let scores = mutual_information_scores(m);
            let mut order: Vec<usize> = (0..m.n_rows()).collect();
            order.sort_by(|&a, &b| {
                scores[b]
                    .total_cmp(&scores[a])
                    .then_with(|| vocab.terms()[a].cmp(&vocab.terms()[b]))
            });
            order.truncate(k);
            order.sort_unstable();
            order
        }
    };
    if keep.is_empty() {
        return Err(Error::NoFeatures(format!("{sel} removed every term")));
    }
    Ok((m.select_rows(&keep), vocab.restrict(&keep)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;

    fn vocab(n: usize) -> Vocabulary {
        Vocabulary::new((0..n).map(|i| format!("t{i}")))
    }

    #[test]
    fn identity_scores() {
        let s = mutual_information_scores(&SparseMatrix::identity(2));
        for v in s {
            assert!((v - 0.5 * core::f64::consts::LN_2).abs() < 1e-15);
        }
    }

    #[test]
    fn independence_scores_vanish() {
        let m = SparseMatrix::from_dense(&[[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]]).unwrap();
        assert!(mutual_information_scores(&m)
            .iter()
            .all(|s| s.abs() < 1e-12));
    }

    #[test]
    fn doc_frequency_and_count() {
        let m = SparseMatrix::from_dense(&[[1.0, 1.0, 1.0, 1.0, 0.0], [1.0, 1.0, 1.0, 1.0, 1.0]])
            .unwrap();
        let (kept, v) = select_features(&m, &vocab(2), FeatureSelector::MinDocFreq(5)).unwrap();
        assert_eq!(kept.n_rows(), 1);
        assert_eq!(v.terms(), &[String::from("t1")]);
        let (same, v) = select_features(&m, &vocab(2), FeatureSelector::MinCount(1)).unwrap();
        assert_eq!(same, m);
        assert_eq!(v, vocab(2));
        let err = select_features(&m, &vocab(2), FeatureSelector::MinDocFreq(6)).unwrap_err();
        assert!(matches!(err, Error::NoFeatures(ref s) if s.contains("MinDocFreq(6)")));
    }

    #[test]
    fn mutual_information_ties_are_lexicographic() {
        // all three terms score the same
        let m = SparseMatrix::identity(3);
        let (_, v) =
            select_features(&m, &vocab(3), FeatureSelector::TopMutualInformation(2)).unwrap();
        assert_eq!(v.terms(), &[String::from("t0"), String::from("t1")]);
    }
}
