use alloc::vec;
use alloc::vec::Vec;
use libm::sqrt;

use super::eval::Assignment;
use super::normalize_columns;
use crate::linalg::{partial_svd_deflated, CenteredColumns, SparseMatrix, SvdConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PddpConfig {
    pub target_leaves: usize,
    pub svd: SvdConfig,
}

impl PddpConfig {
    pub fn new(target_leaves: usize) -> Self {
        PddpConfig {
            target_leaves,
            svd: SvdConfig::default(),
        }
    }
}

/// `v_i > 0` goes to the first side (`true`), `v_i ≤ 0` to the second.
pub fn split_by_sign(v: &[f64]) -> Vec<bool> {
    v.iter().map(|&x| x > 0.0).collect()
}

struct Leaf {
    docs: Vec<usize>,
    scatter: f64,
    /// `None` until tried; `Some(None)` when the leaf cannot be split.
    split: Option<Option<(Vec<usize>, Vec<usize>)>>,
}

/// `(Σ‖x_j − w‖², Σ‖x_j‖²)`
fn scatter_and_norm(x: &SparseMatrix) -> (f64, f64) {
    let n = x.n_cols() as f64;
    let sq: f64 = x.values().iter().map(|v| v * v).sum();
    let mean_sq: f64 = x.row_sums().iter().map(|s| (s / n) * (s / n)).sum();
    ((sq - n * mean_sq).max(0.0), sq)
}

fn scatter(x: &SparseMatrix) -> f64 {
    scatter_and_norm(x).0
}

fn try_split(
    x: &SparseMatrix,
    docs: &[usize],
    svd: &SvdConfig,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if docs.len() < 2 {
        return Ok(None);
    }
    let sub = x.select_cols(docs);
    // identical columns: the centered matrix is rounding noise
    let (sc, sq) = scatter_and_norm(&sub);
    if sc <= 1e-12 * sq {
        return Ok(None);
    }
    let op = CenteredColumns::new(&sub);
    let t = match partial_svd_deflated(&op, 1, svd, &[]) {
        Ok(mut t) => t.remove(0),
        Err(Error::ZeroMatrix) => return Ok(None),
        Err(e) => return Err(e),
    };
    // unit columns: ‖M‖_F ≤ √n
    if t.sigma <= 1e-10 * sqrt(docs.len() as f64) {
        return Ok(None);
    }
    let side = split_by_sign(&t.v);
    let (mut first, mut second) = (Vec::new(), Vec::new());
    for (&d, s) in docs.iter().zip(side) {
        if s {
            first.push(d);
        } else {
            second.push(d);
        }
    }
    if first.is_empty() || second.is_empty() {
        return Ok(None);
    }
    Ok(Some((first, second)))
}

/// Principal Direction Divisive Partitioning of the columns of `m`.
///
/// Columns are normalized to unit length. Each split takes the top right
/// singular vector `v` of the centered node matrix `M − w eᵀ` and sends
/// `v_i > 0` to one child, the rest to the other. The leaf with the largest
/// scatter is split next; leaves that cannot be split are skipped. Labels
/// follow leaf order, a split child replacing its parent in place.
pub fn pddp(m: &SparseMatrix, cfg: &PddpConfig) -> Result<Assignment> {
    let n = m.n_cols();
    if n < 2 {
        return Err(Error::InvalidConfig(
            "PDDP needs at least two documents".into(),
        ));
    }
    if cfg.target_leaves == 0 {
        return Err(Error::InvalidConfig(
            "target_leaves must be at least 1".into(),
        ));
    }
    cfg.svd.validate()?;
    let x = normalize_columns(m);
    let all: Vec<usize> = (0..n).collect();
    let mut leaves = vec![Leaf {
        scatter: scatter(&x),
        docs: all,
        split: None,
    }];
    while leaves.len() < cfg.target_leaves {
        let mut order: Vec<usize> = (0..leaves.len()).collect();
        order.sort_by(|&a, &b| {
            leaves[b]
                .scatter
                .total_cmp(&leaves[a].scatter)
                .then(a.cmp(&b))
        });
        let mut chosen = None;
        for pos in order {
            let leaf = &mut leaves[pos];
            if leaf.split.is_none() {
                leaf.split = Some(try_split(&x, &leaf.docs, &cfg.svd)?);
            }
            if matches!(leaf.split, Some(Some(_))) {
                chosen = Some(pos);
                break;
            }
        }
        let Some(pos) = chosen else { break };
        let Some(Some((a, b))) = leaves[pos].split.take() else {
            unreachable!()
        };
        let left = Leaf {
            scatter: scatter(&x.select_cols(&a)),
            docs: a,
            split: None,
        };
        let right = Leaf {
            scatter: scatter(&x.select_cols(&b)),
            docs: b,
            split: None,
        };
        leaves[pos] = left;
        leaves.insert(pos + 1, right);
    }
    let mut labels = vec![0; n];
    for (c, leaf) in leaves.iter().enumerate() {
        for &d in &leaf.docs {
            labels[d] = c;
        }
    }
    Assignment::new(labels, leaves.len())
}
