//! MatrixMarket coordinate format, `real general` (or `integer general`),
//! 1-based indices.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use bicut_core::SparseMatrix;

use super::FormatError;

pub const HEADER: &str = "%%MatrixMarket matrix coordinate real general";

pub fn write<W: Write>(w: &SparseMatrix, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{HEADER}")?;
    writeln!(out, "{} {} {}", w.n_rows(), w.n_cols(), w.nnz())?;
    for (i, j, v) in w.iter() {
        writeln!(out, "{} {} {}", i + 1, j + 1, v)?;
    }
    out.flush()
}

pub fn read<R: BufRead>(input: R) -> Result<SparseMatrix, FormatError> {
    let mut lines = input.lines().enumerate();
    let bad = |line: usize, msg: &str| FormatError::Parse {
        line: line + 1,
        message: msg.to_string(),
    };

    let (n, header) = lines.next().ok_or_else(|| bad(0, "empty input"))?;
    let header = header?;
    let fields: Vec<String> = header
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    let ok = fields.len() == 5
        && fields[0] == "%%matrixmarket"
        && fields[1] == "matrix"
        && fields[2] == "coordinate"
        && matches!(fields[3].as_str(), "real" | "integer")
        && fields[4] == "general";
    if !ok {
        return Err(bad(
            n,
            "expected `%%MatrixMarket matrix coordinate real general`",
        ));
    }

    let mut size = None;
    let mut entries = Vec::new();
    for (n, line) in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let parts: Vec<&str> = t.split_whitespace().collect();
        match size {
            None => {
                let [m, c, nnz] = parts[..] else {
                    return Err(bad(n, "expected `rows cols entries`"));
                };
                let parse = |s: &str| s.parse::<usize>().map_err(|_| bad(n, "invalid size"));
                size = Some((parse(m)?, parse(c)?, parse(nnz)?));
                entries.reserve(size.map_or(0, |s| s.2));
            }
            Some((m, c, _)) => {
                let [i, j, v] = parts[..] else {
                    return Err(bad(n, "expected `row col value`"));
                };
                let i: usize = i.parse().map_err(|_| bad(n, "invalid row index"))?;
                let j: usize = j.parse().map_err(|_| bad(n, "invalid column index"))?;
                let v: f64 = v.parse().map_err(|_| bad(n, "invalid value"))?;
                if i == 0 || j == 0 || i > m || j > c {
                    return Err(bad(
                        n,
                        &format!("entry ({i}, {j}) outside a {m}x{c} matrix"),
                    ));
                }
                entries.push((i - 1, j - 1, v));
            }
        }
    }
    let (m, c, nnz) = size.ok_or_else(|| bad(0, "missing size line"))?;
    if entries.len() != nnz {
        return Err(FormatError::Parse {
            line: 0,
            message: format!("size line announces {nnz} entries, found {}", entries.len()),
        });
    }
    Ok(SparseMatrix::from_triplets(m, c, entries)?)
}

pub fn load(path: &Path) -> Result<SparseMatrix, FormatError> {
    read(BufReader::new(File::open(path)?))
}

pub fn save(path: &Path, w: &SparseMatrix) -> std::io::Result<()> {
    write(w, BufWriter::new(File::create(path)?))
}
