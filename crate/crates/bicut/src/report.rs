//! Plain-text cluster summaries.

use std::fmt::Write as _;

use bicut_core::text::Vocabulary;
use bicut_core::SparseMatrix;

/// For each cluster, the `n` terms contributing most to the mutual
/// information between terms and clusters:
/// `p(t,c) log(p(t,c) / (p(t) p(c)))`, with probabilities from the summed
/// weights of the cluster's documents. Ties go to the earlier term.
pub fn top_terms(
    w: &SparseMatrix,
    vocab: &Vocabulary,
    labels: &[usize],
    k: usize,
    n: usize,
) -> Vec<Vec<(String, f64)>> {
    let mut joint = vec![vec![0.0; k]; w.n_rows()];
    for (i, j, v) in w.iter() {
        joint[i][labels[j]] += v;
    }
    let total = w.total();
    let row: Vec<f64> = joint.iter().map(|r| r.iter().sum()).collect();
    let mut col = vec![0.0; k];
    for r in &joint {
        for (c, v) in r.iter().enumerate() {
            col[c] += v;
        }
    }
    (0..k)
        .map(|c| {
            let mut scored: Vec<(usize, f64)> = (0..w.n_rows())
                .filter(|&i| joint[i][c] > 0.0)
                .map(|i| {
                    let p = joint[i][c] / total;
                    (i, p * (joint[i][c] * total / (row[i] * col[c])).ln())
                })
                .collect();
            scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
            scored.truncate(n);
            scored
                .into_iter()
                .map(|(i, s)| (vocab.terms()[i].clone(), s))
                .collect()
        })
        .collect()
}

pub struct Summary<'a> {
    pub method: &'a str,
    pub labels: &'a [usize],
    pub k: usize,
    pub top_terms: &'a [Vec<(String, f64)>],
    pub unplaced: usize,
    pub accuracy: Option<f64>,
}

impl Summary<'_> {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "method\t{}", self.method);
        let _ = writeln!(out, "documents\t{}", self.labels.len());
        let _ = writeln!(out, "clusters\t{}", self.k);
        if self.unplaced > 0 {
            let _ = writeln!(out, "unplaced\t{} (assigned to cluster 0)", self.unplaced);
        }
        if let Some(a) = self.accuracy {
            let _ = writeln!(out, "accuracy\t{a:.4}");
        }
        for c in 0..self.k {
            let size = self.labels.iter().filter(|&&l| l == c).count();
            let terms: Vec<&str> = self
                .top_terms
                .get(c)
                .map_or(Vec::new(), |t| t.iter().map(|(s, _)| s.as_str()).collect());
            let _ = writeln!(out, "cluster {c}\t{size} documents\t{}", terms.join(" "));
        }
        out
    }
}
