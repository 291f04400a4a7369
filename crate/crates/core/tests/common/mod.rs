//! Reference computations for the integration tests. Nothing here calls the
//! numerical routines under test.
#![allow(dead_code, clippy::needless_range_loop)]

use bicut_core::SparseMatrix;
use rand::Rng;

pub type Dense = Vec<Vec<f64>>;

pub fn dense(w: &SparseMatrix) -> Dense {
    let mut d = vec![vec![0.0; w.n_cols()]; w.n_rows()];
    for (i, j, v) in w.iter() {
        d[i][j] = v;
    }
    d
}

/// Random nonnegative matrix with roughly `density` nonzeros and no empty
/// row or column.
pub fn random_dense<R: Rng>(m: usize, n: usize, density: f64, rng: &mut R) -> Dense {
    let mut d = vec![vec![0.0; n]; m];
    for row in d.iter_mut() {
        for x in row.iter_mut() {
            if rng.gen_bool(density) {
                *x = rng.gen_range(0.05..5.0);
            }
        }
    }
    for i in 0..m {
        if d[i].iter().all(|&x| x == 0.0) {
            d[i][rng.gen_range(0..n)] = rng.gen_range(0.05..5.0);
        }
    }
    for j in 0..n {
        if (0..m).all(|i| d[i][j] == 0.0) {
            d[rng.gen_range(0..m)][j] = rng.gen_range(0.05..5.0);
        }
    }
    d
}

pub fn sparse(d: &Dense) -> SparseMatrix {
    SparseMatrix::from_dense(d).unwrap()
}

/// Classic cyclic Jacobi for a symmetric matrix. Eigenvalues descending,
/// eigenvectors as columns of the returned matrix.
pub fn sym_eigen(a: &Dense) -> (Vec<f64>, Dense) {
    let n = a.len();
    let mut a = a.clone();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _ in 0..200 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let diag: f64 = (0..n).map(|i| a[i][i] * a[i][i]).sum();
        if off <= 1e-30 * diag.max(1e-300) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[y][y].total_cmp(&a[x][x]));
    let vals = order.iter().map(|&i| a[i][i]).collect();
    let vecs = (0..n)
        .map(|r| order.iter().map(|&c| v[r][c]).collect())
        .collect();
    (vals, vecs)
}

pub struct Triplet {
    pub sigma: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

/// Top `min(m, n)` singular triplets from the eigen-decomposition of
/// `[[0, W], [Wᵀ, 0]]`, whose positive eigenvalues are the singular values
/// with eigenvectors `(u; v)/√2`.
pub fn dense_svd(w: &Dense) -> Vec<Triplet> {
    let (m, n) = (w.len(), w[0].len());
    let size = m + n;
    let mut aug = vec![vec![0.0; size]; size];
    for i in 0..m {
        for j in 0..n {
            aug[i][m + j] = w[i][j];
            aug[m + j][i] = w[i][j];
        }
    }
    let (vals, vecs) = sym_eigen(&aug);
    (0..m.min(n))
        .map(|c| {
            let mut u: Vec<f64> = (0..m).map(|r| vecs[r][c]).collect();
            let mut v: Vec<f64> = (0..n).map(|r| vecs[m + r][c]).collect();
            let nu = norm(&u);
            let nv = norm(&v);
            u.iter_mut().for_each(|x| *x /= nu);
            v.iter_mut().for_each(|x| *x /= nv);
            Triplet {
                sigma: vals[c].max(0.0),
                u,
                v,
            }
        })
        .collect()
}

pub fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Angle between the lines spanned by `a` and `b`, via the chord length
/// (accurate for small angles, unlike `acos`).
pub fn angle(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (norm(a), norm(b));
    let s = if dot(a, b) >= 0.0 { 1.0 } else { -1.0 };
    let chord = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x / na - s * y / nb).powi(2))
        .sum::<f64>()
        .sqrt();
    2.0 * (chord / 2.0).min(1.0).asin()
}

/// `D_X^{-1/2} W D_Y^{-1/2}`
pub fn scaled(w: &Dense) -> Dense {
    let dx: Vec<f64> = w.iter().map(|r| r.iter().sum()).collect();
    let dy: Vec<f64> = (0..w[0].len())
        .map(|j| w.iter().map(|r| r[j]).sum())
        .collect();
    w.iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, &x)| x / (dx[i] * dy[j]).sqrt())
                .collect()
        })
        .collect()
}

/// Ncut straight from the formula with explicit loops.
pub fn ncut(w: &Dense, a: &[bool], b: &[bool]) -> f64 {
    let (mut s11, mut s12, mut s21, mut s22) = (0.0, 0.0, 0.0, 0.0);
    for (i, row) in w.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            match (a[i], b[j]) {
                (true, true) => s11 += x,
                (true, false) => s12 += x,
                (false, true) => s21 += x,
                (false, false) => s22 += x,
            }
        }
    }
    let cut = s12 + s21;
    let term = |num: f64, den: f64| {
        if den == 0.0 {
            if num == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            num / den
        }
    };
    // W(A,Y) + W(X,B) = 2 s11 + s12 + s21
    term(cut, 2.0 * s11 + cut) + term(cut, 2.0 * s22 + cut)
}

pub fn mask(bits: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| bits >> i & 1 == 1).collect()
}

/// Minimum Ncut over partitions with A, Aᶜ, B, Bᶜ all nonempty.
pub fn brute_min_ncut(w: &Dense) -> f64 {
    let (m, n) = (w.len(), w[0].len());
    let mut best = f64::INFINITY;
    for xa in 1..(1u64 << m) - 1 {
        for yb in 1..(1u64 << n) - 1 {
            best = best.min(ncut(w, &mask(xa, m), &mask(yb, n)));
        }
    }
    best
}
