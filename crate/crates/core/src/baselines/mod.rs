//! Document-clustering baselines (spherical K-means and PDDP) and
//! confusion-matrix evaluation.

mod eval;
mod kmeans;
mod pddp;

pub use eval::{accuracy, confusion, Assignment, ConfusionMatrix};
pub use kmeans::{kmeans, KMeansConfig, KMeansResult};
pub use pddp::{pddp, split_by_sign, PddpConfig};

use alloc::vec::Vec;
use libm::sqrt;

use crate::linalg::SparseMatrix;

/// Scales every nonzero column to unit Euclidean length.
pub fn normalize_columns(m: &SparseMatrix) -> SparseMatrix {
    let mut sq = alloc::vec![0.0; m.n_cols()];
    for (_, j, v) in m.iter() {
        sq[j] += v * v;
    }
    let inv: Vec<f64> = sq
        .iter()
        .map(|&s| if s > 0.0 { 1.0 / sqrt(s) } else { 0.0 })
        .collect();
    m.map_entries(|_, j, v| v * inv[j])
}
