//! Synthetic bipartite graphs with known structure.

use alloc::format;
use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::linalg::SparseMatrix;
use crate::{Error, Result};

/// Block model: row block `r` and column block `c` are linked with
/// probability `p_in` when `r == c` and `p_out` otherwise; every edge has
/// weight 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedConfig {
    pub row_blocks: Vec<usize>,
    pub col_blocks: Vec<usize>,
    pub p_in: f64,
    pub p_out: f64,
}

impl PlantedConfig {
    /// `k` square blocks of `size` rows and columns each.
    pub fn square(k: usize, size: usize, p_in: f64, p_out: f64) -> Self {
        PlantedConfig {
            row_blocks: alloc::vec![size; k],
            col_blocks: alloc::vec![size; k],
            p_in,
            p_out,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Planted {
    pub weights: SparseMatrix,
    pub row_labels: Vec<usize>,
    pub col_labels: Vec<usize>,
}

fn labels(blocks: &[usize]) -> Vec<usize> {
    blocks
        .iter()
        .enumerate()
        .flat_map(|(b, &n)| core::iter::repeat_n(b, n))
        .collect()
}

pub fn planted_partition<R: Rng + ?Sized>(cfg: &PlantedConfig, rng: &mut R) -> Result<Planted> {
    if cfg.row_blocks.len() != cfg.col_blocks.len() {
        return Err(Error::InvalidConfig(format!(
            "{} row blocks but {} column blocks",
            cfg.row_blocks.len(),
            cfg.col_blocks.len()
        )));
    }
    for p in [cfg.p_in, cfg.p_out] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidConfig(format!(
                "edge probability {p} outside [0, 1]"
            )));
        }
    }
    let row_labels = labels(&cfg.row_blocks);
    let col_labels = labels(&cfg.col_blocks);
    let mut entries = Vec::new();
    for (i, &r) in row_labels.iter().enumerate() {
        for (j, &c) in col_labels.iter().enumerate() {
            let p = if r == c { cfg.p_in } else { cfg.p_out };
            if rng.gen_bool(p) {
                entries.push((i, j, 1.0));
            }
        }
    }
    let weights = SparseMatrix::from_triplets(row_labels.len(), col_labels.len(), entries)?;
    Ok(Planted {
        weights,
        row_labels,
        col_labels,
    })
}

/// Nonnegative `m × n` matrix with entries uniform in `(0, 1]`, each present
/// with probability `density`; every row and column gets at least one entry.
pub fn random_weights<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    density: f64,
    rng: &mut R,
) -> SparseMatrix {
    let mut entries = Vec::new();
    for i in 0..m {
        for j in 0..n {
            if rng.gen_bool(density.clamp(0.0, 1.0)) {
                entries.push((i, j, 1.0 - rng.gen::<f64>()));
            }
        }
    }
    // guarantee positive degrees
    for i in 0..m {
        entries.push((i, rng.gen_range(0..n), 1.0 - rng.gen::<f64>()));
    }
    for j in 0..n {
        entries.push((rng.gen_range(0..m), j, 1.0 - rng.gen::<f64>()));
    }
    SparseMatrix::from_triplets(m, n, entries).expect("entries are in range and positive")
}

pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Appends `rows` rows and `cols` columns whose entries are 1 with
/// probability `density`.
pub fn with_dense_lines<R: Rng + ?Sized>(
    w: &SparseMatrix,
    rows: usize,
    cols: usize,
    density: f64,
    rng: &mut R,
) -> SparseMatrix {
    let (m, n) = (w.n_rows() + rows, w.n_cols() + cols);
    let mut entries: Vec<(usize, usize, f64)> = w.iter().collect();
    for i in 0..m {
        for j in 0..n {
            if (i >= w.n_rows() || j >= w.n_cols()) && rng.gen_bool(density) {
                entries.push((i, j, 1.0));
            }
        }
    }
    SparseMatrix::from_triplets(m, n, entries).expect("entries are in range and positive")
}
