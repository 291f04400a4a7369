//! Co-clustering of weighted bipartite graphs by spectral relaxation of the
//! normalized cut.
//!
//! The graph is given by a nonnegative edge-weight matrix `W` whose rows are
//! one vertex class (terms) and whose columns are the other (documents). The
//! second singular triplet of `D_X^{-1/2} W D_Y^{-1/2}` embeds both classes on
//! a line; thresholding that embedding gives a bipartition, and recursing on
//! the matched subgraphs gives a cluster hierarchy.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, corpus loading
//! and the command-line harness live in the `bicut` crate.
#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod baselines;
pub mod correspondence;
mod error;
pub mod graph;
pub mod linalg;
pub mod oracle;
pub mod spectral;
pub mod sre;
pub mod synth;
pub mod text;

pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Bipartition, Side, Stripped};
pub use linalg::{partial_svd, DenseMatrix, LinearOperator, SparseMatrix, SvdConfig, SvdTriplet};
pub use spectral::{embedding_coordinates, second_triplet_scaled};
pub use sre::{
    select_cut_points, sre_bipartition, sre_recursive, ClusterTree, CutStrategy, SreConfig,
    StopRule,
};
