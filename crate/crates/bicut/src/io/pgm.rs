//! Binary (P5) PGM rendering of a sparsity pattern.

use std::io::Write;

use bicut_core::SparseMatrix;

/// Renders `w` with rows in `row_order` and columns in `col_order`. Nonzero
/// cells are black on white. Dimensions above `max_side` are binned: a pixel
/// is black if any cell in its bin is nonzero.
pub fn write_pattern<W: Write>(
    w: &SparseMatrix,
    row_order: &[usize],
    col_order: &[usize],
    max_side: usize,
    mut out: W,
) -> std::io::Result<()> {
    let (m, n) = (w.n_rows(), w.n_cols());
    assert_eq!(row_order.len(), m, "row order length");
    assert_eq!(col_order.len(), n, "column order length");
    let max_side = max_side.max(1);
    let height = m.clamp(1, max_side);
    let width = n.clamp(1, max_side);

    let mut row_pos = vec![0; m];
    for (p, &i) in row_order.iter().enumerate() {
        row_pos[i] = p;
    }
    let mut col_pos = vec![0; n];
    for (p, &j) in col_order.iter().enumerate() {
        col_pos[j] = p;
    }

    let mut pixels = vec![255u8; width * height];
    for (i, j, v) in w.iter() {
        if v != 0.0 {
            let r = row_pos[i] * height / m;
            let c = col_pos[j] * width / n;
            pixels[r * width + c] = 0;
        }
    }
    write!(out, "P5\n{width} {height}\n255\n")?;
    out.write_all(&pixels)?;
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permuted_diagonal() {
        let w = SparseMatrix::from_dense(&[[1.0, 0.0], [0.0, 2.0]]).unwrap();
        let mut buf = Vec::new();
        write_pattern(&w, &[1, 0], &[0, 1], 100, &mut buf).unwrap();
        assert_eq!(&buf[..11], b"P5\n2 2\n255\n");
        assert_eq!(&buf[11..], &[255, 0, 0, 255]);
    }

    #[test]
    fn binning() {
        let w = SparseMatrix::identity(10);
        let order: Vec<usize> = (0..10).collect();
        let mut buf = Vec::new();
        write_pattern(&w, &order, &order, 5, &mut buf).unwrap();
        assert_eq!(&buf[..11], b"P5\n5 5\n255\n");
        let px = &buf[11..];
        for r in 0..5 {
            for c in 0..5 {
                assert_eq!(px[r * 5 + c] == 0, r == c);
            }
        }
    }
}
