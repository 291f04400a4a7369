//! Partial SVD by Golub–Kahan–Lanczos bidiagonalization.
//!
//! Starting from a unit vector `v_1`, the recurrence
//!
//! ```text
//! α_j u_j     = A v_j  − β_{j−1} u_{j−1}
//! β_j v_{j+1} = Aᵀ u_j − α_j v_j
//! ```
//!
//! builds orthonormal bases `U_j`, `V_j` with `A V_j = U_j B_j`, `B_j` upper
//! bidiagonal. Singular triplets of `B_j` lift to Ritz triplets of `A`; the
//! residual of the `i`-th one is `|β_j · p_i[j]|` where `p_i` is its left
//! singular vector in `U`-coordinates.
//!
//! `B_j` is solved through the symmetric tridiagonal matrix with zero diagonal
//! and off-diagonal `(α_1, β_1, α_2, …, α_j)`, whose eigenvalues are `±σ`; this
//! avoids squaring the singular values.
//!
//! Known singular pairs (e.g. the trivial top pair of a degree-scaled matrix)
//! can be deflated: every Lanczos vector is kept orthogonal to them, so the
//! iteration runs on the complementary invariant subspace.

use alloc::vec;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::vector::{axpy, norm, normalize, orthogonalize, scale};
use super::{symmetric_tridiagonal_eigen, LinearOperator, SparseMatrix};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvdConfig {
    /// Upper bound on the Krylov dimension (Lanczos steps).
    pub max_iterations: usize,
    /// Relative residual target: `‖Av − σu‖ ≤ tolerance · σ₁`.
    pub tolerance: f64,
    /// Full reorthogonalization of both Lanczos bases.
    pub reorthogonalize: bool,
    /// Seed of the start vector.
    pub seed: u64,
}

impl Default for SvdConfig {
    fn default() -> Self {
        SvdConfig {
            max_iterations: 500,
            tolerance: 1e-8,
            reorthogonalize: true,
            seed: 0,
        }
    }
}

impl SvdConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig(alloc::format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// A singular value with its unit left (`u`, length `n_rows`) and right
/// (`v`, length `n_cols`) vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdTriplet {
    pub sigma: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl SvdTriplet {
    /// `(‖Av − σu‖, ‖Aᵀu − σv‖)`.
    pub fn residuals<A: LinearOperator + ?Sized>(&self, a: &A) -> (f64, f64) {
        let mut av = vec![0.0; a.n_rows()];
        a.apply(&self.v, &mut av);
        axpy(-self.sigma, &self.u, &mut av);
        let mut atu = vec![0.0; a.n_cols()];
        a.apply_transpose(&self.u, &mut atu);
        axpy(-self.sigma, &self.v, &mut atu);
        (norm(&av), norm(&atu))
    }

    /// Flips `u` and `v` jointly so the largest-magnitude entry of `u` is
    /// positive (first such entry on ties).
    pub fn canonicalize_sign(&mut self) {
        let mut best = 0usize;
        for (i, x) in self.u.iter().enumerate() {
            if x.abs() > self.u[best].abs() {
                best = i;
            }
        }
        if self.u.get(best).is_some_and(|&x| x < 0.0) {
            scale(&mut self.u, -1.0);
            scale(&mut self.v, -1.0);
        }
    }
}

/// The `k` largest singular triplets of a sparse matrix, sorted by
/// decreasing `σ`.
pub fn partial_svd(a: &SparseMatrix, k: usize, cfg: &SvdConfig) -> Result<Vec<SvdTriplet>> {
    if !a.has_nonzero() {
        return Err(Error::ZeroMatrix);
    }
    partial_svd_deflated(a, k, cfg, &[])
}

/// The `k` largest singular triplets of `a` restricted to the orthogonal
/// complement of the `known` singular pairs.
///
/// Each known triplet must be an exact singular triplet of `a` with unit
/// vectors; its `sigma` contributes to the residual scale.
pub fn partial_svd_deflated<A: LinearOperator + ?Sized>(
    a: &A,
    k: usize,
    cfg: &SvdConfig,
    known: &[SvdTriplet],
) -> Result<Vec<SvdTriplet>> {
    cfg.validate()?;
    let (m, n) = (a.n_rows(), a.n_cols());
    for t in known {
        if t.u.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: t.u.len(),
            });
        }
        if t.v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: t.v.len(),
            });
        }
    }
    let available = m.min(n).saturating_sub(known.len());
    if k > available {
        return Err(Error::TooManyTriplets {
            requested: k,
            available,
        });
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let known_scale = known.iter().fold(0.0f64, |s, t| s.max(t.sigma));
    let known_left: Vec<&[f64]> = known.iter().map(|t| t.u.as_slice()).collect();
    let known_right: Vec<&[f64]> = known.iter().map(|t| t.v.as_slice()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut us: Vec<Vec<f64>> = Vec::new();
    let mut vs: Vec<Vec<f64>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut anorm = 0.0f64;
    let mut best = f64::INFINITY;
    let mut last_check = 0usize;

    let mut v = random_unit_orthogonal(&mut rng, n, known_right.iter().copied())
        .ok_or(Error::ZeroMatrix)?;

    loop {
        let j = vs.len();
        let dim = j + 1;

        let mut r = vec![0.0; m];
        a.apply(&v, &mut r);
        if j > 0 {
            axpy(-betas[j - 1], &us[j - 1], &mut r);
        }
        if cfg.reorthogonalize {
            orthogonalize(
                &mut r,
                us.iter()
                    .map(Vec::as_slice)
                    .chain(known_left.iter().copied()),
            );
        } else {
            orthogonalize(&mut r, known_left.iter().copied());
        }
        let mut alpha = norm(&r);
        anorm = anorm.max(alpha);
        vs.push(v);
        let u = if alpha > 1e-13 * anorm && alpha > 0.0 {
            scale(&mut r, 1.0 / alpha);
            r
        } else {
            alpha = 0.0;
            random_unit_orthogonal(
                &mut rng,
                m,
                us.iter()
                    .map(Vec::as_slice)
                    .chain(known_left.iter().copied()),
            )
            .unwrap_or_else(|| vec![0.0; m])
        };
        us.push(u);
        alphas.push(alpha);

        let exhausted = dim >= available;
        let mut p = vec![0.0; n];
        a.apply_transpose(&us[j], &mut p);
        axpy(-alpha, &vs[j], &mut p);
        if cfg.reorthogonalize {
            orthogonalize(
                &mut p,
                vs.iter()
                    .map(Vec::as_slice)
                    .chain(known_right.iter().copied()),
            );
        } else {
            orthogonalize(&mut p, known_right.iter().copied());
        }
        let mut beta = norm(&p);
        anorm = anorm.max(beta);
        let mut next = None;
        // the left space is used up but the right one is not: the projected
        // matrix gains one extra column
        let mut tail = None;
        if beta > 1e-13 * anorm && beta > 0.0 {
            scale(&mut p, 1.0 / beta);
            if exhausted {
                tail = Some(p);
            } else {
                next = Some(p);
            }
        } else {
            // invariant subspace found; continue from a fresh direction
            beta = 0.0;
            if !exhausted {
                next = random_unit_orthogonal(
                    &mut rng,
                    n,
                    vs.iter()
                        .map(Vec::as_slice)
                        .chain(known_right.iter().copied()),
                );
            }
        }
        betas.push(beta);
        let exhausted = exhausted || next.is_none();
        let out_of_budget = dim >= cfg.max_iterations;

        let due = dim - last_check >= (dim / 8).max(1);
        if dim >= k && (exhausted || out_of_budget || due) {
            last_check = dim;
            let ritz = match &tail {
                Some(_) => bidiagonal_svd(&alphas, &betas, k)?,
                None => bidiagonal_svd(&alphas, &betas[..dim - 1], k)?,
            };
            let sigma_max = ritz.first().map_or(0.0, |r| r.sigma).max(known_scale);
            if sigma_max <= 0.0 {
                if exhausted {
                    return Err(Error::ZeroMatrix);
                }
            } else {
                let trailing = if tail.is_some() { 0.0 } else { beta };
                let estimate = ritz
                    .iter()
                    .map(|r| (trailing * r.left[dim - 1]).abs())
                    .fold(0.0f64, f64::max)
                    / sigma_max;
                best = best.min(estimate);
                if estimate <= cfg.tolerance || exhausted {
                    if let Some(t) = tail.take() {
                        vs.push(t);
                    }
                    let triplets = lift(&ritz, &us, &vs);
                    let explicit = triplets
                        .iter()
                        .map(|t| {
                            let (r1, r2) = t.residuals(a);
                            r1.max(r2)
                        })
                        .fold(0.0f64, f64::max)
                        / sigma_max;
                    best = best.min(explicit);
                    if explicit <= cfg.tolerance {
                        return Ok(triplets);
                    }
                    if exhausted {
                        return Err(Error::NoConvergence {
                            iterations: dim,
                            best_residual: best,
                        });
                    }
                }
            }
        }
        if out_of_budget || exhausted {
            return Err(Error::NoConvergence {
                iterations: dim,
                best_residual: best,
            });
        }
        v = next.expect("checked above");
    }
}

struct Ritz {
    sigma: f64,
    left: Vec<f64>,
    right: Vec<f64>,
}

/// Top-`k` singular triplets of the upper bidiagonal matrix with diagonal
/// `alphas` and super-diagonal `betas`. With `betas.len() == alphas.len()`
/// the matrix is `d x (d+1)`, the last column holding only `betas[d-1]`.
fn bidiagonal_svd(alphas: &[f64], betas: &[f64], k: usize) -> Result<Vec<Ritz>> {
    let d = alphas.len();
    let wide = betas.len() == d;
    let size = 2 * d + usize::from(wide);
    let mut off = Vec::with_capacity(size - 1);
    for i in 0..d {
        off.push(alphas[i]);
        if i < betas.len() {
            off.push(betas[i]);
        }
    }
    let (values, vectors) = symmetric_tridiagonal_eigen(&vec![0.0; size], &off)?;
    // eigenvector layout: (q_1, p_1, q_2, p_2, …) with B q = σ p
    let n_right = d + usize::from(wide);
    let mut out = Vec::with_capacity(k);
    for c in (size - k.min(d)..size).rev() {
        let mut left = Vec::with_capacity(d);
        let mut right = Vec::with_capacity(n_right);
        for i in 0..n_right {
            right.push(vectors[(2 * i) * size + c]);
            if i < d {
                left.push(vectors[(2 * i + 1) * size + c]);
            }
        }
        normalize(&mut left);
        normalize(&mut right);
        out.push(Ritz {
            sigma: values[c].max(0.0),
            left,
            right,
        });
    }
    Ok(out)
}

fn lift(ritz: &[Ritz], us: &[Vec<f64>], vs: &[Vec<f64>]) -> Vec<SvdTriplet> {
    let m = us[0].len();
    let n = vs[0].len();
    ritz.iter()
        .map(|r| {
            let mut u = vec![0.0; m];
            for (c, b) in r.left.iter().zip(us) {
                axpy(*c, b, &mut u);
            }
            let mut v = vec![0.0; n];
            for (c, b) in r.right.iter().zip(vs) {
                axpy(*c, b, &mut v);
            }
            normalize(&mut u);
            normalize(&mut v);
            let mut t = SvdTriplet {
                sigma: r.sigma,
                u,
                v,
            };
            t.canonicalize_sign();
            t
        })
        .collect()
}

fn random_unit_orthogonal<'a, I>(rng: &mut ChaCha8Rng, len: usize, basis: I) -> Option<Vec<f64>>
where
    I: Iterator<Item = &'a [f64]> + Clone,
{
    for _ in 0..8 {
        let mut x: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let before = norm(&x);
        orthogonalize(&mut x, basis.clone());
        let after = norm(&x);
        if after > 1e-8 * before {
            scale(&mut x, 1.0 / after);
            return Some(x);
        }
    }
    None
}
