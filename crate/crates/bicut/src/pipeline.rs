//! Corpus preprocessing and document clustering with any of the three
//! methods.

use anyhow::{Context, Result};
use bicut_core::baselines::{
    accuracy, confusion, kmeans, pddp, Assignment, ConfusionMatrix, KMeansConfig, PddpConfig,
};
use bicut_core::text::{
    apply_weighting, build_matrix, select_features, Corpus, FeatureSelector, TermDocument,
    TokenizerConfig, WeightingScheme,
};
use bicut_core::{
    embedding_coordinates, sre_recursive, BipartiteGraph, ClusterTree, SparseMatrix, SreConfig,
    StopRule, SvdConfig,
};

use crate::options::Method;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Preprocess {
    pub tokenizer: TokenizerConfig,
    /// Applied in order.
    pub selectors: Vec<FeatureSelector>,
    pub weighting: WeightingScheme,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prepared {
    /// Raw counts after feature selection.
    pub counts: TermDocument,
    pub weighted: SparseMatrix,
}

pub fn prepare(corpus: &Corpus, p: &Preprocess) -> Result<Prepared> {
    let mut td = build_matrix(corpus, &p.tokenizer).context("building the term-document matrix")?;
    for &sel in &p.selectors {
        let (m, v) = select_features(&td.matrix, &td.vocabulary, sel)?;
        td.matrix = m;
        td.vocabulary = v;
    }
    let sums = td.matrix.col_sums();
    td.empty_documents = (0..sums.len()).filter(|&j| sums[j] == 0.0).collect();
    let weighted = apply_weighting(&td.matrix, p.weighting)?;
    Ok(Prepared {
        counts: td,
        weighted,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterOptions {
    pub method: Method,
    pub k: usize,
    /// SRE only. `stop` is replaced by `TargetLeaves(k)` when `stop_rule` is
    /// `None`.
    pub sre: SreConfig,
    pub stop_rule: Option<StopRule>,
    pub seed: u64,
}

impl ClusterOptions {
    pub fn new(method: Method, k: usize, seed: u64) -> Self {
        ClusterOptions {
            method,
            k,
            sre: SreConfig::default(),
            stop_rule: None,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    /// Cluster of every document (column).
    pub labels: Vec<usize>,
    /// Number of clusters produced; labels are below this.
    pub k: usize,
    pub tree: Option<ClusterTree>,
    /// Documents with no remaining weight. SRE cannot place them and puts
    /// them in cluster 0.
    pub unplaced: Vec<usize>,
}

/// Clusters the columns of a terms × documents matrix.
pub fn cluster_documents(w: &SparseMatrix, opts: &ClusterOptions) -> Result<Clustering> {
    anyhow::ensure!(opts.k >= 1, "the number of clusters must be at least 1");
    let mut svd = opts.sre.svd;
    svd.seed = opts.seed;
    match opts.method {
        Method::Sre => {
            let cfg = SreConfig {
                stop: opts.stop_rule.unwrap_or(StopRule::TargetLeaves(opts.k)),
                svd,
                ..opts.sre
            };
            let (g, stripped) = BipartiteGraph::strip(w.clone());
            anyhow::ensure!(
                g.n_x() > 0 && g.n_y() > 0,
                "the matrix has no nonzero entries"
            );
            let tree = sre_recursive(&g, &cfg)?;
            let (_, docs) = tree.flat_labels(w.n_rows(), w.n_cols());
            let unplaced: Vec<usize> = (0..docs.len()).filter(|&j| docs[j].is_none()).collect();
            debug_assert_eq!(unplaced, stripped.y);
            let labels = docs.into_iter().map(|c| c.unwrap_or(0)).collect();
            Ok(Clustering {
                labels,
                k: tree.leaf_count(),
                tree: Some(tree),
                unplaced,
            })
        }
        Method::Pddp => {
            let a = pddp(
                w,
                &PddpConfig {
                    target_leaves: opts.k,
                    svd,
                },
            )?;
            Ok(Clustering {
                k: a.k(),
                labels: a.labels().to_vec(),
                tree: None,
                unplaced: Vec::new(),
            })
        }
        Method::Kmeans => {
            let r = kmeans(
                w,
                &KMeansConfig {
                    seed: opts.seed,
                    ..KMeansConfig::new(opts.k)
                },
            )?;
            let a = r.assignment;
            Ok(Clustering {
                k: a.k(),
                labels: a.labels().to_vec(),
                tree: None,
                unplaced: Vec::new(),
            })
        }
    }
}

/// Confusion matrix and matched accuracy against `truth` (labels below
/// `k_true`). Both sides are padded to the same number of clusters.
pub fn evaluate(c: &Clustering, truth: &[usize], k_true: usize) -> Result<(ConfusionMatrix, f64)> {
    let k = c.k.max(k_true);
    let pred = Assignment::new(c.labels.clone(), k)?;
    let truth = Assignment::new(truth.to_vec(), k)?;
    let mut cm = confusion(&pred, &truth)?;
    let acc = accuracy(&cm)?;
    for row in &mut cm.counts {
        row.truncate(k_true);
    }
    cm.counts.truncate(c.k.max(1));
    cm.k_true = k_true;
    Ok((cm, acc))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reordering {
    /// Original row ids in display order.
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub sigma: f64,
}

/// Rows sorted by their spectral coordinate `x`, columns by `y`, ascending;
/// ties keep index order. Zero-degree rows and columns go last.
pub fn spectral_order(w: &SparseMatrix, svd: &SvdConfig) -> Result<Reordering> {
    let (g, stripped) = BipartiteGraph::strip(w.clone());
    anyhow::ensure!(
        g.n_x() >= 2 && g.n_y() >= 2,
        "reordering needs at least two nonzero rows and columns"
    );
    let e = embedding_coordinates(&g, svd)?;
    let order = |coords: &[f64], ids: &[usize], dropped: &[usize]| -> Vec<usize> {
        let mut local: Vec<usize> = (0..coords.len()).collect();
        local.sort_by(|&p, &q| coords[p].total_cmp(&coords[q]).then(p.cmp(&q)));
        local
            .iter()
            .map(|&p| ids[p])
            .chain(dropped.iter().copied())
            .collect()
    };
    Ok(Reordering {
        rows: order(&e.x, g.x_ids(), &stripped.x),
        cols: order(&e.y, g.y_ids(), &stripped.y),
        sigma: e.sigma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use bicut_core::text::Document;

    fn corpus() -> Corpus {
        let mut docs = Vec::new();
        for i in 0..6 {
            docs.push(Document::new(
                format!("a{i}"),
                Some("ball"),
                "ball game team score ball",
            ));
            docs.push(Document::new(
                format!("b{i}"),
                Some("code"),
                "code compile rust code type",
            ));
        }
        docs.push(Document::new("e", Some("ball"), "x"));
        Corpus::new(docs).unwrap()
    }

    #[test]
    fn every_method_separates_two_topics() {
        let prep = prepare(&corpus(), &Preprocess::default()).unwrap();
        assert_eq!(prep.counts.empty_documents, vec![12]);
        let truth: Vec<usize> = corpus()
            .documents()
            .iter()
            .map(|d| usize::from(d.label.as_deref() == Some("code")))
            .collect();
        for method in [Method::Sre, Method::Pddp, Method::Kmeans] {
            let c = cluster_documents(&prep.weighted, &ClusterOptions::new(method, 2, 1)).unwrap();
            assert_eq!(c.labels.len(), 13);
            let (cm, acc) = evaluate(&c, &truth, 2).unwrap();
            assert_eq!(cm.total(), 13);
            assert!(acc >= 12.0 / 13.0, "{method}: {acc}");
        }
        let sre =
            cluster_documents(&prep.weighted, &ClusterOptions::new(Method::Sre, 2, 1)).unwrap();
        assert_eq!(sre.unplaced, vec![12]);
        assert_eq!(sre.labels[12], 0);
    }

    #[test]
    fn selectors_apply_in_order() {
        let p = Preprocess {
            selectors: vec![
                FeatureSelector::MinDocFreq(2),
                FeatureSelector::TopMutualInformation(3),
            ],
            ..Preprocess::default()
        };
        let prep = prepare(&corpus(), &p).unwrap();
        assert_eq!(prep.counts.vocabulary.len(), 3);
        assert!(prep.counts.vocabulary.get("x").is_none());
    }

    #[test]
    fn order_is_a_permutation_with_empty_lines_last() {
        let w = SparseMatrix::from_dense(&[
            [0.0, 2.0, 0.0, 1.0],
            [0.0, 0.0, 0.0, 0.0],
            [3.0, 0.0, 1.0, 0.0],
            [1.0, 0.0, 2.0, 0.0],
            [0.0, 1.0, 0.0, 2.0],
        ])
        .unwrap();
        let r = spectral_order(&w, &SvdConfig::default()).unwrap();
        assert_eq!(r.rows[4], 1);
        let mut rows = r.rows.clone();
        rows.sort_unstable();
        assert_eq!(rows, [0, 1, 2, 3, 4]);
        // two components: each block is contiguous in both orders
        let first_rows: Vec<bool> = r.rows[..2].iter().map(|&i| i == 0 || i == 4).collect();
        assert!(first_rows.iter().all(|&b| b == first_rows[0]));
        let first_cols: Vec<bool> = r.cols[..2].iter().map(|&j| j == 1 || j == 3).collect();
        assert!(first_cols.iter().all(|&b| b == first_cols[0]));
    }
}
