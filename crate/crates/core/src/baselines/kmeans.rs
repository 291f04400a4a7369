use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::eval::Assignment;
use super::normalize_columns;
use crate::linalg::SparseMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KMeansConfig {
    pub k: usize,
    pub seed: u64,
    /// Stop once no centroid moves farther than this (Euclidean).
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl KMeansConfig {
    pub fn new(k: usize) -> Self {
        KMeansConfig {
            k,
            seed: 0,
            tolerance: 1e-6,
            max_iterations: 300,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansResult {
    pub assignment: Assignment,
    /// Sum of squared distances to the assigned centroid after each
    /// assignment step.
    pub objectives: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

fn sq_dist_to(doc: (&[usize], &[f64]), centroid: &[f64], centroid_sq: f64) -> f64 {
    let (idx, vals) = doc;
    let mut d = centroid_sq;
    for (&i, &x) in idx.iter().zip(vals) {
        let c = centroid[i];
        // replace c² by (x − c)² on the document's support
        d += (x - c) * (x - c) - c * c;
    }
    d.max(0.0)
}

/// Lloyd's algorithm on the length-normalized columns of `docs`.
///
/// Initial centroids are `k` distinct documents drawn with `cfg.seed`. A
/// cluster left empty by an assignment step takes the point farthest from
/// its own centroid.
pub fn kmeans(docs: &SparseMatrix, cfg: &KMeansConfig) -> Result<KMeansResult> {
    let n = docs.n_cols();
    let k = cfg.k;
    if k == 0 {
        return Err(Error::InvalidConfig("k must be at least 1".into()));
    }
    if k > n {
        return Err(Error::InvalidConfig(format!(
            "k = {k} exceeds the {n} documents"
        )));
    }
    if !(cfg.tolerance >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "tolerance must be nonnegative, got {}",
            cfg.tolerance
        )));
    }
    let x = normalize_columns(docs).transpose();
    let dim = x.n_cols();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut centroids: Vec<Vec<f64>> = rand::seq::index::sample(&mut rng, n, k)
        .into_iter()
        .map(|j| {
            let mut c = vec![0.0; dim];
            let (idx, vals) = x.row(j);
            for (&i, &v) in idx.iter().zip(vals) {
                c[i] = v;
            }
            c
        })
        .collect();

    let mut labels = vec![0usize; n];
    let mut dist = vec![0.0; n];
    let mut objectives = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iterations {
        iterations += 1;
        let sq: Vec<f64> = centroids
            .iter()
            .map(|c| c.iter().map(|v| v * v).sum())
            .collect();
        for j in 0..n {
            let (mut best, mut best_d) = (0, f64::INFINITY);
            for (c, centroid) in centroids.iter().enumerate() {
                let d = sq_dist_to(x.row(j), centroid, sq[c]);
                if d < best_d {
                    best = c;
                    best_d = d;
                }
            }
            labels[j] = best;
            dist[j] = best_d;
        }
        let mut sizes = vec![0usize; k];
        for &l in &labels {
            sizes[l] += 1;
        }
        for c in 0..k {
            if sizes[c] > 0 {
                continue;
            }
            // take the farthest point from a cluster that can spare it
            let far = (0..n)
                .filter(|&j| sizes[labels[j]] > 1)
                .max_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(b.cmp(&a)))
                .expect("k ≤ n leaves a cluster with two points");
            sizes[labels[far]] -= 1;
            sizes[c] = 1;
            labels[far] = c;
            dist[far] = 0.0;
            centroids[c].iter_mut().for_each(|v| *v = 0.0);
            let (idx, vals) = x.row(far);
            for (&i, &v) in idx.iter().zip(vals) {
                centroids[c][i] = v;
            }
        }
        objectives.push(dist.iter().sum());

        let mut next = vec![vec![0.0; dim]; k];
        for (j, &l) in labels.iter().enumerate() {
            let (idx, vals) = x.row(j);
            for (&i, &v) in idx.iter().zip(vals) {
                next[l][i] += v;
            }
        }
        let mut movement = 0.0f64;
        for (c, centroid) in next.iter_mut().enumerate() {
            let s = sizes[c] as f64;
            centroid.iter_mut().for_each(|v| *v /= s);
            let moved: f64 = centroid
                .iter()
                .zip(&centroids[c])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            movement = movement.max(libm::sqrt(moved));
        }
        centroids = next;
        if movement < cfg.tolerance {
            converged = true;
            break;
        }
    }
    Ok(KMeansResult {
        assignment: Assignment::new(labels, k)?,
        objectives,
        iterations,
        converged,
    })
}
