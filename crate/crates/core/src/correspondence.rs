//! Correspondence-analysis view of a bipartite graph.
//!
//! Reading `W` as a two-way contingency table with grand total `w = s(W)`,
//! the standardized residual matrix is
//!
//! ```text
//! z_ij = (w_ij/w − (d_i/w)(d_j/w)) / sqrt((d_i/w)(d_j/w))
//! ```
//!
//! Removing the known top singular pair from `Ŵ` leaves a matrix that is
//! entrywise proportional to `Z`, so both produce the same nontrivial
//! singular spectrum. [`equivalence_report`] measures the constant rather
//! than assuming it. These matrices are dense; this module is a diagnostic.

use alloc::vec::Vec;
use libm::sqrt;

use crate::graph::BipartiteGraph;
use crate::linalg::DenseMatrix;
use crate::{Error, Result};

/// Largest `m·n` this module will materialize.
pub const DENSE_LIMIT: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct CorrespondenceMatrix {
    pub z: DenseMatrix,
    pub total_weight: f64,
}

fn check_size(g: &BipartiteGraph) -> Result<()> {
    let cells = g.n_x().saturating_mul(g.n_y());
    if cells > DENSE_LIMIT {
        return Err(Error::TooLarge {
            vertices: cells,
            limit: DENSE_LIMIT,
        });
    }
    Ok(())
}

fn dense_weights(g: &BipartiteGraph) -> DenseMatrix {
    g.weights().to_dense()
}

pub fn build_z(g: &BipartiteGraph) -> Result<CorrespondenceMatrix> {
    check_size(g)?;
    let w = g.total_weight();
    let mut z = dense_weights(g);
    let (dx, dy) = (g.d_x(), g.d_y());
    for i in 0..g.n_x() {
        let r = dx[i] / w;
        for j in 0..g.n_y() {
            let c = dy[j] / w;
            z[(i, j)] = (z[(i, j)] / w - r * c) / sqrt(r * c);
        }
    }
    Ok(CorrespondenceMatrix { z, total_weight: w })
}

/// `Ŵ − D_X^{1/2}eeᵀD_Y^{1/2} / (‖D_X^{1/2}e‖ ‖D_Y^{1/2}e‖)`, dense.
pub fn deflated_scaled(g: &BipartiteGraph) -> Result<DenseMatrix> {
    check_size(g)?;
    let sx: Vec<f64> = g.d_x().iter().map(|&d| sqrt(d)).collect();
    let sy: Vec<f64> = g.d_y().iter().map(|&d| sqrt(d)).collect();
    // ‖D^{1/2}e‖² = Σd = w on both sides
    let norm = sqrt(g.d_x().iter().sum::<f64>()) * sqrt(g.d_y().iter().sum::<f64>());
    let mut out = dense_weights(g);
    for i in 0..g.n_x() {
        for j in 0..g.n_y() {
            out[(i, j)] = out[(i, j)] / (sx[i] * sy[j]) - sx[i] * sy[j] / norm;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    /// Least-squares `c` in `deflated ≈ c·Z`; `None` when `Z ≡ 0`.
    pub proportionality_constant: Option<f64>,
    /// `max |deflated − c·Z|`, or `max |deflated|` when `c` is undefined.
    pub max_abs_deviation: f64,
}

pub fn equivalence_report(g: &BipartiteGraph) -> Result<EquivalenceReport> {
    let z = build_z(g)?.z;
    let d = deflated_scaled(g)?;
    let zz: f64 = z.as_slice().iter().map(|x| x * x).sum();
    if zz == 0.0 {
        return Ok(EquivalenceReport {
            proportionality_constant: None,
            max_abs_deviation: d.max_abs(),
        });
    }
    let dz: f64 = z
        .as_slice()
        .iter()
        .zip(d.as_slice())
        .map(|(a, b)| a * b)
        .sum();
    let c = dz / zz;
    let dev = z
        .as_slice()
        .iter()
        .zip(d.as_slice())
        .map(|(a, b)| (b - c * a).abs())
        .fold(0.0, f64::max);
    Ok(EquivalenceReport {
        proportionality_constant: Some(c),
        max_abs_deviation: dev,
    })
}
