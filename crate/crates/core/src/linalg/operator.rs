use super::vector::dot;
use super::SparseMatrix;

/// A matrix known only through its action on vectors.
///
/// `out` is overwritten, not accumulated into.
pub trait LinearOperator {
    fn n_rows(&self) -> usize;
    fn n_cols(&self) -> usize;
    fn apply(&self, x: &[f64], out: &mut [f64]);
    fn apply_transpose(&self, y: &[f64], out: &mut [f64]);
}

/// `M - w eᵀ` where `w` is the mean column of `M`, applied without forming
/// the dense centered matrix.
#[derive(Debug, Clone)]
pub struct CenteredColumns<'a> {
    matrix: &'a SparseMatrix,
    mean: alloc::vec::Vec<f64>,
}

impl<'a> CenteredColumns<'a> {
    pub fn new(matrix: &'a SparseMatrix) -> Self {
        let n = matrix.n_cols().max(1) as f64;
        let mut mean = matrix.row_sums();
        for m in &mut mean {
            *m /= n;
        }
        CenteredColumns { matrix, mean }
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }
}

impl LinearOperator for CenteredColumns<'_> {
    fn n_rows(&self) -> usize {
        self.matrix.n_rows()
    }

    fn n_cols(&self) -> usize {
        self.matrix.n_cols()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        self.matrix.apply(x, out);
        let s: f64 = x.iter().sum();
        for (o, m) in out.iter_mut().zip(&self.mean) {
            *o -= m * s;
        }
    }

    fn apply_transpose(&self, y: &[f64], out: &mut [f64]) {
        self.matrix.apply_transpose(y, out);
        let s = dot(&self.mean, y);
        for o in out.iter_mut() {
            *o -= s;
        }
    }
}
