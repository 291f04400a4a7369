use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Cluster (or class) index per document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    labels: Vec<usize>,
    k: usize,
}

impl Assignment {
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(&label) = labels.iter().find(|&&l| l >= k) {
            return Err(Error::InvalidLabel { label, k });
        }
        Ok(Assignment { labels, k })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Same labels over a larger label range.
    pub fn with_k(self, k: usize) -> Result<Self> {
        Assignment::new(self.labels, k)
    }
}

/// `counts[p][t]`: documents predicted in cluster `p` with true label `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    pub counts: Vec<Vec<usize>>,
    pub k_true: usize,
}

impl ConfusionMatrix {
    pub fn k_pred(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    /// Per true label totals (class sizes).
    pub fn column_sums(&self) -> Vec<usize> {
        let mut s = vec![0; self.k_true];
        for row in &self.counts {
            for (t, &c) in row.iter().enumerate() {
                s[t] += c;
            }
        }
        s
    }
}

pub fn confusion(pred: &Assignment, truth: &Assignment) -> Result<ConfusionMatrix> {
    if pred.len() != truth.len() {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            got: pred.len(),
        });
    }
    let mut counts = vec![vec![0; truth.k()]; pred.k()];
    for (&p, &t) in pred.labels().iter().zip(truth.labels()) {
        counts[p][t] += 1;
    }
    Ok(ConfusionMatrix {
        counts,
        k_true: truth.k(),
    })
}

/// Fraction of documents on the diagonal under the best one-to-one matching
/// of predicted clusters to true labels. An empty matrix scores 0.
pub fn accuracy(cm: &ConfusionMatrix) -> Result<f64> {
    if cm.k_pred() != cm.k_true {
        return Err(Error::NotSquare {
            rows: cm.k_pred(),
            cols: cm.k_true,
        });
    }
    let total = cm.total();
    if total == 0 {
        return Ok(0.0);
    }
    let matched = max_weight_matching(&cm.counts);
    Ok(matched as f64 / total as f64)
}

/// Hungarian algorithm (shortest augmenting paths with potentials) on the
/// cost `max − count`; returns the matched weight.
fn max_weight_matching(w: &[Vec<usize>]) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let max = w.iter().flatten().copied().max().unwrap_or(0) as i64;
    let cost = |i: usize, j: usize| max - w[i][j] as i64;
    // 1-based, column 0 is the virtual source
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![i64::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=n).map(|j| w[p[j] - 1][j - 1]).sum()
}

impl core::fmt::Display for ConfusionMatrix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for row in &self.counts {
            let cells: Vec<_> = row.iter().map(|c| format!("{c}")).collect();
            writeln!(f, "{}", cells.join("\t"))?;
        }
        Ok(())
    }
}
