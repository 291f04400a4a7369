//! Slow reference implementations used to validate the fast paths: a dense
//! one-sided Jacobi SVD, exhaustive minimum-Ncut search, and Ncut evaluated
//! straight from vertex-set associations.

use alloc::vec;
use alloc::vec::Vec;
use libm::{hypot, sqrt};

use crate::graph::{ratio, BipartiteGraph, Bipartition};
use crate::linalg::{DenseMatrix, SvdTriplet};
use crate::{Error, Result};

/// Exhaustive search is limited to this many vertices in total.
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Full thin SVD of a dense matrix by one-sided (Hestenes) Jacobi rotations.
/// Returns `min(m, n)` triplets sorted by decreasing `σ`.
pub fn jacobi_svd(a: &DenseMatrix) -> Vec<SvdTriplet> {
    if a.n_rows() < a.n_cols() {
        return jacobi_svd(&a.transpose())
            .into_iter()
            .map(|t| SvdTriplet {
                sigma: t.sigma,
                u: t.v,
                v: t.u,
            })
            .collect();
    }
    let (m, n) = (a.n_rows(), a.n_cols());
    // columns of `cols` converge to σ_j u_j, columns of `v` to v_j
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|x| x * x).sum();
                let beta: f64 = cols[q].iter().map(|x| x * x).sum();
                let gamma: f64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x * y).sum();
                if gamma.abs() <= 1e-15 * sqrt(alpha * beta) || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + hypot(1.0, zeta));
                let c = 1.0 / hypot(1.0, t);
                let s = c * t;
                for mat in [&mut cols, &mut v] {
                    let (lo, hi) = mat.split_at_mut(q);
                    for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                        let (xp, xq) = (*x, *y);
                        *x = c * xp - s * xq;
                        *y = s * xp + c * xq;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut out: Vec<SvdTriplet> = cols
        .into_iter()
        .zip(v)
        .map(|(mut u, v)| {
            let sigma = sqrt(u.iter().map(|x| x * x).sum());
            if sigma > 0.0 {
                u.iter_mut().for_each(|x| *x /= sigma);
            }
            let mut t = SvdTriplet { sigma, u, v };
            t.canonicalize_sign();
            t
        })
        .collect();
    out.sort_by(|a, b| b.sigma.total_cmp(&a.sigma));
    debug_assert_eq!(out.len(), n.min(m));
    out
}

/// Ncut computed from `assoc(·,·)` of the four vertex sets, independently of
/// the block-sum bookkeeping in [`BipartiteGraph::ncut_value`].
pub fn ncut_by_definition(g: &BipartiteGraph, p: &Bipartition) -> Result<f64> {
    let (a, ac, b, bc) = (p.a(), p.a_complement(), p.b(), p.b_complement());
    let all_x: Vec<usize> = (0..g.n_x()).collect();
    let all_y: Vec<usize> = (0..g.n_y()).collect();
    let cut = g.association(&a, &bc)? + g.association(&ac, &b)?;
    // assoc(A ∪ B, V) = assoc(A, Y) + assoc(X, B)
    let vol1 = g.association(&a, &all_y)? + g.association(&all_x, &b)?;
    let vol2 = g.association(&ac, &all_y)? + g.association(&all_x, &bc)?;
    Ok(ratio(cut, vol1) + ratio(cut, vol2))
}

/// Minimum Ncut over all non-degenerate bipartitions, by enumeration.
/// Ties keep the first partition in mask order.
pub fn brute_force_min_ncut(g: &BipartiteGraph) -> Result<(Bipartition, f64)> {
    let (nx, ny) = (g.n_x(), g.n_y());
    if nx + ny > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            vertices: nx + ny,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if nx < 2 || ny < 2 {
        return Err(Error::Unsplittable(
            "a non-degenerate bipartition needs two vertices per side".into(),
        ));
    }
    let mut best: Option<(Bipartition, f64)> = None;
    // vertex 0 of X is pinned to A: the complement gives the same Ncut
    for xm in (1u64..(1 << nx) - 1).filter(|m| m & 1 == 1) {
        for ym in 1u64..(1 << ny) - 1 {
            let p = Bipartition::from_masks(nx, ny, xm, ym);
            let v = g.ncut_value(&p)?;
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some((p, v));
            }
        }
    }
    best.ok_or_else(|| Error::Unsplittable("no non-degenerate bipartition".into()))
}
