//! Second singular triplet of the degree-scaled weight matrix and the
//! resulting one-dimensional embedding of both vertex classes.
//!
//! With `Ŵ = D_X^{-1/2} W D_Y^{-1/2}` we have `Ŵ (D_Y^{1/2} e) = D_X^{1/2} e`
//! and `Ŵᵀ (D_X^{1/2} e) = D_Y^{1/2} e`, and no singular value of `Ŵ`
//! exceeds one. The top triplet is therefore known in closed form and is
//! deflated instead of computed.

use alloc::vec::Vec;
use libm::sqrt;

use crate::graph::BipartiteGraph;
use crate::linalg::vector::normalize;
use crate::linalg::{partial_svd_deflated, SvdConfig, SvdTriplet};
use crate::Result;

/// `(1, D_X^{1/2}e/‖·‖, D_Y^{1/2}e/‖·‖)`.
pub fn top_triplet_scaled(g: &BipartiteGraph) -> SvdTriplet {
    let mut u: Vec<f64> = g.d_x().iter().map(|&d| sqrt(d)).collect();
    let mut v: Vec<f64> = g.d_y().iter().map(|&d| sqrt(d)).collect();
    normalize(&mut u);
    normalize(&mut v);
    SvdTriplet { sigma: 1.0, u, v }
}

/// `(σ₂, û, v̂)` of `Ŵ`, with `û ⟂ D_X^{1/2}e` and `v̂ ⟂ D_Y^{1/2}e`.
///
/// A disconnected graph yields `σ₂ = 1`; that is a valid result, not an error.
/// When `σ₂` is repeated the returned vectors are some unit pair from its
/// singular subspace.
pub fn second_triplet_scaled(g: &BipartiteGraph, cfg: &SvdConfig) -> Result<SvdTriplet> {
    let scaled = g.scaled_matrix();
    let top = top_triplet_scaled(g);
    let mut t = partial_svd_deflated(&scaled, 1, cfg, core::slice::from_ref(&top))?;
    Ok(t.remove(0))
}

/// Spectral coordinates of both vertex classes.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    /// `D_X^{-1/2} û`
    pub x: Vec<f64>,
    /// `D_Y^{-1/2} v̂`
    pub y: Vec<f64>,
    /// `σ₂(Ŵ)`
    pub sigma: f64,
}

/// `x = D_X^{-1/2} û`, `y = D_Y^{-1/2} v̂` from the second triplet of `Ŵ`.
/// These satisfy `xᵀD_X e + yᵀD_Y e = 0`.
pub fn embedding_coordinates(g: &BipartiteGraph, cfg: &SvdConfig) -> Result<Embedding> {
    let t = second_triplet_scaled(g, cfg)?;
    let x = t.u.iter().zip(g.d_x()).map(|(u, &d)| u / sqrt(d)).collect();
    let y = t.v.iter().zip(g.d_y()).map(|(v, &d)| v / sqrt(d)).collect();
    Ok(Embedding {
        x,
        y,
        sigma: t.sigma,
    })
}
