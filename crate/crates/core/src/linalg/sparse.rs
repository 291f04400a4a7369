use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{DenseMatrix, LinearOperator};
use crate::{Error, Result};

/// Compressed-row storage of a nonnegative weight matrix.
///
/// ```text
/// row_offsets.len() == n_rows + 1
/// row_offsets[0] == 0, row_offsets[n_rows] == nnz
/// columns strictly increasing within each row
/// ```
///
/// Explicit zeros may be stored; they contribute nothing to any product.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    n_rows: usize,
    n_cols: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Validates raw CSR arrays.
    pub fn try_from_csr(
        n_rows: usize,
        n_cols: usize,
        row_offsets: Vec<usize>,
        col_indices: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if row_offsets.len() != n_rows + 1 {
            return Err(Error::InvalidStructure(format!(
                "row_offsets has length {}, expected {}",
                row_offsets.len(),
                n_rows + 1
            )));
        }
        if row_offsets[0] != 0 {
            return Err(Error::InvalidStructure("row_offsets[0] must be 0".into()));
        }
        if col_indices.len() != values.len() || row_offsets[n_rows] != values.len() {
            return Err(Error::InvalidStructure(format!(
                "row_offsets ends at {} but {} column indices and {} values are stored",
                row_offsets[n_rows],
                col_indices.len(),
                values.len()
            )));
        }
        for i in 0..n_rows {
            let (lo, hi) = (row_offsets[i], row_offsets[i + 1]);
            if lo > hi {
                return Err(Error::InvalidStructure(format!(
                    "row_offsets decreases at row {i}"
                )));
            }
            for k in lo..hi {
                let j = col_indices[k];
                if j >= n_cols {
                    return Err(Error::InvalidStructure(format!(
                        "column index {j} out of range in row {i} ({n_cols} columns)"
                    )));
                }
                if k > lo && col_indices[k - 1] >= j {
                    return Err(Error::InvalidStructure(format!(
                        "column indices not strictly increasing in row {i}"
                    )));
                }
                let v = values[k];
                if !(v >= 0.0) || !v.is_finite() {
                    return Err(Error::InvalidWeight {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
            }
        }
        Ok(SparseMatrix {
            n_rows,
            n_cols,
            row_offsets,
            col_indices,
            values,
        })
    }

    /// Builds from `(row, col, value)` entries in any order; duplicates are summed.
    pub fn from_triplets<I>(n_rows: usize, n_cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut entries: Vec<(usize, usize, f64)> = entries.into_iter().collect();
        for &(i, j, v) in &entries {
            if i >= n_rows || j >= n_cols {
                return Err(Error::InvalidStructure(format!(
                    "entry ({i}, {j}) outside a {n_rows}x{n_cols} matrix"
                )));
            }
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidWeight {
                    row: i,
                    col: j,
                    value: v,
                });
            }
        }
        entries.sort_unstable_by_key(|e| (e.0, e.1));

        let mut row_offsets = vec![0usize; n_rows + 1];
        let mut col_indices = Vec::with_capacity(entries.len());
        let mut values: Vec<f64> = Vec::with_capacity(entries.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in entries {
            if last == Some((i, j)) {
                *values.last_mut().unwrap() += v;
                continue;
            }
            last = Some((i, j));
            row_offsets[i + 1] += 1;
            col_indices.push(j);
            values.push(v);
        }
        for i in 0..n_rows {
            row_offsets[i + 1] += row_offsets[i];
        }
        Ok(SparseMatrix {
            n_rows,
            n_cols,
            row_offsets,
            col_indices,
            values,
        })
    }

    /// Builds from dense rows, dropping zeros.
    pub fn from_dense<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n_cols {
                return Err(Error::DimensionMismatch {
                    expected: n_cols,
                    got: r.len(),
                });
            }
            for (j, &v) in r.iter().enumerate() {
                if v != 0.0 {
                    entries.push((i, j, v));
                }
            }
        }
        Self::from_triplets(n_rows, n_cols, entries)
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        SparseMatrix {
            n_rows,
            n_cols,
            row_offsets: vec![0; n_rows + 1],
            col_indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            n_rows: n,
            n_cols: n,
            row_offsets: (0..=n).collect(),
            col_indices: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    /// Number of stored entries, explicit zeros included.
    #[inline]
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Column indices and values of row `i`.
    #[inline]
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let (lo, hi) = (self.row_offsets[i], self.row_offsets[i + 1]);
        (&self.col_indices[lo..hi], &self.values[lo..hi])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (cols, vals) = self.row(i);
        cols.binary_search(&j).map_or(0.0, |k| vals[k])
    }

    /// Stored entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n_rows).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&j, &v)| (i, j, v))
        })
    }

    pub fn has_nonzero(&self) -> bool {
        self.values.iter().any(|&v| v != 0.0)
    }

    /// `A x`.
    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                got: x.len(),
            });
        }
        let mut out = vec![0.0; self.n_rows];
        self.apply(x, &mut out);
        Ok(out)
    }

    /// `Aᵀ x`.
    pub fn spmv_transpose(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n_rows {
            return Err(Error::DimensionMismatch {
                expected: self.n_rows,
                got: x.len(),
            });
        }
        let mut out = vec![0.0; self.n_cols];
        self.apply_transpose(x, &mut out);
        Ok(out)
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n_rows)
            .map(|i| self.row(i).1.iter().sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n_cols];
        for (&j, &v) in self.col_indices.iter().zip(&self.values) {
            out[j] += v;
        }
        out
    }

    /// Number of stored nonzero entries per column.
    pub fn col_counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.n_cols];
        for (&j, &v) in self.col_indices.iter().zip(&self.values) {
            if v != 0.0 {
                out[j] += 1;
            }
        }
        out
    }

    /// Sum of all entries.
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut counts = vec![0usize; self.n_cols + 1];
        for &j in &self.col_indices {
            counts[j + 1] += 1;
        }
        for j in 0..self.n_cols {
            counts[j + 1] += counts[j];
        }
        let row_offsets = counts.clone();
        let mut next = counts;
        let mut col_indices = vec![0; self.nnz()];
        let mut values = vec![0.0; self.nnz()];
        for i in 0..self.n_rows {
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                let k = next[j];
                col_indices[k] = i;
                values[k] = v;
                next[j] += 1;
            }
        }
        SparseMatrix {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            row_offsets,
            col_indices,
            values,
        }
    }

    /// The submatrix on the given rows and columns, in the given order.
    ///
    /// Indices must be in range and each list free of duplicates.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut col_map = vec![usize::MAX; self.n_cols];
        for (new, &old) in cols.iter().enumerate() {
            col_map[old] = new;
        }
        let mut row_offsets = Vec::with_capacity(rows.len() + 1);
        row_offsets.push(0);
        let mut col_indices = Vec::new();
        let mut values = Vec::new();
        let mut buf: Vec<(usize, f64)> = Vec::new();
        for &i in rows {
            buf.clear();
            let (cs, vs) = self.row(i);
            for (&j, &v) in cs.iter().zip(vs) {
                let nj = col_map[j];
                if nj != usize::MAX {
                    buf.push((nj, v));
                }
            }
            buf.sort_unstable_by_key(|e| e.0);
            for &(j, v) in &buf {
                col_indices.push(j);
                values.push(v);
            }
            row_offsets.push(col_indices.len());
        }
        SparseMatrix {
            n_rows: rows.len(),
            n_cols: cols.len(),
            row_offsets,
            col_indices,
            values,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> SparseMatrix {
        let cols: Vec<usize> = (0..self.n_cols).collect();
        self.submatrix(rows, &cols)
    }

    pub fn select_cols(&self, cols: &[usize]) -> SparseMatrix {
        let rows: Vec<usize> = (0..self.n_rows).collect();
        self.submatrix(&rows, cols)
    }

    /// Applies `f(row, col, value)` to every stored entry, keeping the pattern.
    pub fn map_entries<F: FnMut(usize, usize, f64) -> f64>(&self, mut f: F) -> SparseMatrix {
        let mut out = self.clone();
        for i in 0..self.n_rows {
            for k in self.row_offsets[i]..self.row_offsets[i + 1] {
                out.values[k] = f(i, self.col_indices[k], self.values[k]);
            }
        }
        out
    }

    /// Drops explicitly stored zeros.
    pub fn pruned(&self) -> SparseMatrix {
        let entries = self.iter().filter(|e| e.2 != 0.0);
        Self::from_triplets(self.n_rows, self.n_cols, entries).expect("valid entries stay valid")
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.n_rows, self.n_cols);
        for (i, j, v) in self.iter() {
            d[(i, j)] = v;
        }
        d
    }
}

impl LinearOperator for SparseMatrix {
    fn n_rows(&self) -> usize {
        self.n_rows
    }

    fn n_cols(&self) -> usize {
        self.n_cols
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let (cols, vals) = self.row(i);
            *o = cols.iter().zip(vals).map(|(&j, &v)| v * x[j]).sum();
        }
    }

    fn apply_transpose(&self, y: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for (i, &yi) in y.iter().enumerate() {
            if yi == 0.0 {
                continue;
            }
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                out[j] += v * yi;
            }
        }
    }
}
