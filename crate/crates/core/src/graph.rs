//! The weighted bipartite graph, its vertex partitions and the cut objectives.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use libm::sqrt;

use crate::linalg::SparseMatrix;
use crate::{Error, Result};

/// One of the two vertex classes: `X` indexes rows (terms), `Y` columns
/// (documents).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn as_char(self) -> char {
        match self {
            Side::X => 'X',
            Side::Y => 'Y',
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Vertices removed because their degree was zero, by original id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stripped {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

impl Stripped {
    pub fn is_empty(&self) -> bool {
        self.x.is_empty() && self.y.is_empty()
    }
}

/// Weight matrix `W` with its degree vectors `d_x = W e`, `d_y = Wᵀ e`.
///
/// Every vertex has positive degree. Vertices carry the ids they had in the
/// matrix the graph was originally built from, so induced subgraphs can be
/// mapped back.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteGraph {
    weights: SparseMatrix,
    d_x: Vec<f64>,
    d_y: Vec<f64>,
    x_ids: Vec<usize>,
    y_ids: Vec<usize>,
}

impl BipartiteGraph {
    /// Fails on the first zero-degree vertex.
    pub fn new(weights: SparseMatrix) -> Result<Self> {
        let d_x = weights.row_sums();
        let d_y = weights.col_sums();
        if let Some(i) = d_x.iter().position(|&d| !(d > 0.0)) {
            return Err(Error::ZeroDegree {
                side: 'X',
                index: i,
            });
        }
        if let Some(j) = d_y.iter().position(|&d| !(d > 0.0)) {
            return Err(Error::ZeroDegree {
                side: 'Y',
                index: j,
            });
        }
        let x_ids = (0..weights.n_rows()).collect();
        let y_ids = (0..weights.n_cols()).collect();
        Ok(BipartiteGraph {
            weights,
            d_x,
            d_y,
            x_ids,
            y_ids,
        })
    }

    /// Removes zero-degree rows and columns and reports them.
    pub fn strip(weights: SparseMatrix) -> (Self, Stripped) {
        let x_ids: Vec<usize> = (0..weights.n_rows()).collect();
        let y_ids: Vec<usize> = (0..weights.n_cols()).collect();
        Self::strip_with_ids(weights, &x_ids, &y_ids)
    }

    fn strip_with_ids(weights: SparseMatrix, x_ids: &[usize], y_ids: &[usize]) -> (Self, Stripped) {
        let d_x = weights.row_sums();
        let d_y = weights.col_sums();
        let keep_x: Vec<usize> = (0..d_x.len()).filter(|&i| d_x[i] > 0.0).collect();
        let keep_y: Vec<usize> = (0..d_y.len()).filter(|&j| d_y[j] > 0.0).collect();
        let stripped = Stripped {
            x: (0..d_x.len())
                .filter(|&i| !(d_x[i] > 0.0))
                .map(|i| x_ids[i])
                .collect(),
            y: (0..d_y.len())
                .filter(|&j| !(d_y[j] > 0.0))
                .map(|j| y_ids[j])
                .collect(),
        };
        let (weights, d_x, d_y) = if stripped.is_empty() {
            (weights, d_x, d_y)
        } else {
            let w = weights.submatrix(&keep_x, &keep_y);
            let (dx, dy) = (w.row_sums(), w.col_sums());
            (w, dx, dy)
        };
        let graph = BipartiteGraph {
            weights,
            d_x,
            d_y,
            x_ids: keep_x.iter().map(|&i| x_ids[i]).collect(),
            y_ids: keep_y.iter().map(|&j| y_ids[j]).collect(),
        };
        (graph, stripped)
    }

    /// Subgraph on the given local vertices; vertices left without edges are
    /// stripped and reported by original id.
    pub fn induced(&self, xs: &[usize], ys: &[usize]) -> (BipartiteGraph, Stripped) {
        let w = self.weights.submatrix(xs, ys);
        let x_ids: Vec<usize> = xs.iter().map(|&i| self.x_ids[i]).collect();
        let y_ids: Vec<usize> = ys.iter().map(|&j| self.y_ids[j]).collect();
        Self::strip_with_ids(w, &x_ids, &y_ids)
    }

    pub fn weights(&self) -> &SparseMatrix {
        &self.weights
    }

    pub fn d_x(&self) -> &[f64] {
        &self.d_x
    }

    pub fn d_y(&self) -> &[f64] {
        &self.d_y
    }

    pub fn n_x(&self) -> usize {
        self.d_x.len()
    }

    pub fn n_y(&self) -> usize {
        self.d_y.len()
    }

    /// Original ids of the X vertices, by local index.
    pub fn x_ids(&self) -> &[usize] {
        &self.x_ids
    }

    pub fn y_ids(&self) -> &[usize] {
        &self.y_ids
    }

    /// `s(W)`, the sum of all weights.
    pub fn total_weight(&self) -> f64 {
        self.d_x.iter().sum()
    }

    /// `W(S, T) = Σ_{i∈S, j∈T} w_ij`. Repeated indices count once.
    pub fn association(&self, s: &[usize], t: &[usize]) -> Result<f64> {
        let mut in_s = vec![false; self.n_x()];
        for &i in s {
            *in_s.get_mut(i).ok_or(Error::IndexOutOfRange {
                side: 'X',
                index: i,
                len: self.n_x(),
            })? = true;
        }
        let mut in_t = vec![false; self.n_y()];
        for &j in t {
            *in_t.get_mut(j).ok_or(Error::IndexOutOfRange {
                side: 'Y',
                index: j,
                len: self.n_y(),
            })? = true;
        }
        let mut sum = 0.0;
        for (i, _) in in_s.iter().enumerate().filter(|e| *e.1) {
            let (cols, vals) = self.weights.row(i);
            sum += cols
                .iter()
                .zip(vals)
                .filter(|(&j, _)| in_t[j])
                .map(|(_, &v)| v)
                .sum::<f64>();
        }
        Ok(sum)
    }

    /// Weights of the four blocks `W(A,B)`, `W(A,Bᶜ)`, `W(Aᶜ,B)`, `W(Aᶜ,Bᶜ)`.
    pub fn block_sums(&self, p: &Bipartition) -> Result<BlockSums> {
        self.check(p)?;
        let mut s = [[0.0f64; 2]; 2];
        for (i, j, v) in self.weights.iter() {
            s[usize::from(!p.x_side[i])][usize::from(!p.y_side[j])] += v;
        }
        Ok(BlockSums {
            ab: s[0][0],
            ab_c: s[0][1],
            a_cb: s[1][0],
            a_cb_c: s[1][1],
        })
    }

    /// `cut(A, B) = W(A, Bᶜ) + W(Aᶜ, B)`.
    pub fn cut_value(&self, p: &Bipartition) -> Result<f64> {
        Ok(self.block_sums(p)?.cut())
    }

    /// `cut(A,B)/(W(A,Y) + W(X,B)) + cut(Aᶜ,Bᶜ)/(W(Aᶜ,Y) + W(X,Bᶜ))`.
    ///
    /// A term with zero denominator contributes `0` if its numerator is zero
    /// and `+∞` otherwise.
    pub fn ncut_value(&self, p: &Bipartition) -> Result<f64> {
        Ok(self.block_sums(p)?.ncut())
    }

    /// `D_X^{-1/2} W D_Y^{-1/2}`, same sparsity pattern as `W`.
    pub fn scaled_matrix(&self) -> SparseMatrix {
        let rx: Vec<f64> = self.d_x.iter().map(|&d| 1.0 / sqrt(d)).collect();
        let ry: Vec<f64> = self.d_y.iter().map(|&d| 1.0 / sqrt(d)).collect();
        self.weights.map_entries(|i, j, w| w * rx[i] * ry[j])
    }

    fn check(&self, p: &Bipartition) -> Result<()> {
        if p.x_side.len() != self.n_x() {
            return Err(Error::DimensionMismatch {
                expected: self.n_x(),
                got: p.x_side.len(),
            });
        }
        if p.y_side.len() != self.n_y() {
            return Err(Error::DimensionMismatch {
                expected: self.n_y(),
                got: p.y_side.len(),
            });
        }
        Ok(())
    }
}

/// Block weights of `W` under a bipartition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockSums {
    pub ab: f64,
    pub ab_c: f64,
    pub a_cb: f64,
    pub a_cb_c: f64,
}

impl BlockSums {
    pub fn cut(&self) -> f64 {
        self.ab_c + self.a_cb
    }

    pub fn ncut(&self) -> f64 {
        let cut = self.cut();
        // W(A,Y) + W(X,B) = 2 W(A,B) + cut
        ratio(cut, 2.0 * self.ab + cut) + ratio(cut, 2.0 * self.a_cb_c + cut)
    }
}

pub(crate) fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Assignment of X vertices to `A` (true) or `Aᶜ`, and Y vertices to `B`
/// (true) or `Bᶜ`. `A` is matched with `B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    pub x_side: Vec<bool>,
    pub y_side: Vec<bool>,
}

impl Bipartition {
    pub fn new(x_side: Vec<bool>, y_side: Vec<bool>) -> Self {
        Bipartition { x_side, y_side }
    }

    /// `A = {i : x_i ≥ c_x}`, `B = {j : y_j ≥ c_y}`.
    pub fn from_thresholds(x: &[f64], y: &[f64], c_x: f64, c_y: f64) -> Self {
        Bipartition {
            x_side: x.iter().map(|&v| v >= c_x).collect(),
            y_side: y.iter().map(|&v| v >= c_y).collect(),
        }
    }

    /// Decodes bit masks: bit `i` of `x_mask` set means X vertex `i` is in `A`.
    pub fn from_masks(n_x: usize, n_y: usize, x_mask: u64, y_mask: u64) -> Self {
        Bipartition {
            x_side: (0..n_x).map(|i| x_mask >> i & 1 == 1).collect(),
            y_side: (0..n_y).map(|j| y_mask >> j & 1 == 1).collect(),
        }
    }

    pub fn complement(&self) -> Self {
        Bipartition {
            x_side: self.x_side.iter().map(|b| !b).collect(),
            y_side: self.y_side.iter().map(|b| !b).collect(),
        }
    }

    pub fn a(&self) -> Vec<usize> {
        members(&self.x_side, true)
    }

    pub fn a_complement(&self) -> Vec<usize> {
        members(&self.x_side, false)
    }

    pub fn b(&self) -> Vec<usize> {
        members(&self.y_side, true)
    }

    pub fn b_complement(&self) -> Vec<usize> {
        members(&self.y_side, false)
    }

    /// True when any of `A`, `Aᶜ`, `B`, `Bᶜ` is empty.
    pub fn is_degenerate(&self) -> bool {
        let full_or_empty = |s: &[bool]| s.iter().all(|&b| b) || s.iter().all(|&b| !b);
        full_or_empty(&self.x_side) || full_or_empty(&self.y_side)
    }
}

fn members(side: &[bool], value: bool) -> Vec<usize> {
    side.iter()
        .enumerate()
        .filter(|e| *e.1 == value)
        .map(|e| e.0)
        .collect()
}
