//! Repeated mixture experiments: sample a fixed number of documents from
//! each chosen class, cluster the sample with every method, and compare
//! accuracies across trials.

use std::fmt::Write as _;

use anyhow::{bail, ensure, Context, Result};
use bicut_core::text::Corpus;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::options::Method;
use crate::pipeline::{cluster_documents, evaluate, prepare, ClusterOptions, Preprocess};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub labels: Vec<String>,
    /// Documents drawn from each class, aligned with `labels`.
    pub mixture: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// The first method is compared against each of the others.
    pub methods: Vec<Method>,
    pub preprocess: Preprocess,
    /// Template for every method; `method`, `k` and `seed` are overwritten.
    pub cluster: ClusterOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub methods: Vec<Method>,
    /// `accuracies[t][m]`
    pub accuracies: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodSummary {
    pub mean: f64,
    /// Sample standard deviation; 0 for a single trial.
    pub std: f64,
}

/// Wins, ties and losses of the first method against another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Record {
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
}

/// Positions of the documents of one trial, class by class. Trial `t` draws
/// with a generator seeded by `seed + t`.
pub fn sample_trial(
    corpus: &Corpus,
    labels: &[String],
    mixture: &[usize],
    seed: u64,
) -> Result<Vec<usize>> {
    ensure!(
        labels.len() == mixture.len(),
        "{} labels but {} mixture sizes",
        labels.len(),
        mixture.len()
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = Vec::new();
    for (label, &want) in labels.iter().zip(mixture) {
        let pool: Vec<usize> = (0..corpus.len())
            .filter(|&p| corpus.documents()[p].label.as_deref() == Some(label.as_str()))
            .collect();
        if pool.len() < want {
            bail!(
                "class {label:?} has {} documents but the mixture asks for {want}",
                pool.len()
            );
        }
        let mut chosen: Vec<usize> = rand::seq::index::sample(&mut rng, pool.len(), want)
            .into_iter()
            .map(|i| pool[i])
            .collect();
        chosen.sort_unstable();
        picked.extend(chosen);
    }
    Ok(picked)
}

pub fn run(corpus: &Corpus, spec: &ExperimentSpec) -> Result<Outcome> {
    ensure!(spec.trials >= 1, "trials must be at least 1");
    ensure!(!spec.methods.is_empty(), "at least one method is required");
    ensure!(
        !spec.labels.is_empty(),
        "at least one class label is required"
    );
    for l in &spec.labels {
        ensure!(
            corpus
                .documents()
                .iter()
                .any(|d| d.label.as_deref() == Some(l)),
            "unknown class label {l:?}"
        );
    }
    let k = spec.labels.len();
    let mut accuracies = Vec::with_capacity(spec.trials);
    for t in 0..spec.trials {
        let seed = spec.seed.wrapping_add(t as u64);
        let positions = sample_trial(corpus, &spec.labels, &spec.mixture, seed)?;
        let sample = corpus.select(&positions)?;
        let truth: Vec<usize> = sample
            .documents()
            .iter()
            .map(|d| {
                spec.labels
                    .iter()
                    .position(|l| Some(l.as_str()) == d.label.as_deref())
                    .unwrap_or(0)
            })
            .collect();
        let prep = prepare(&sample, &spec.preprocess).with_context(|| format!("trial {t}"))?;
        let mut row = Vec::with_capacity(spec.methods.len());
        for &method in &spec.methods {
            let opts = ClusterOptions {
                method,
                k,
                seed,
                ..spec.cluster.clone()
            };
            let c = cluster_documents(&prep.weighted, &opts)
                .with_context(|| format!("trial {t}, method {method}"))?;
            row.push(evaluate(&c, &truth, k)?.1);
        }
        accuracies.push(row);
    }
    Ok(Outcome {
        methods: spec.methods.clone(),
        accuracies,
    })
}

fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

impl Outcome {
    pub fn summary(&self, m: usize) -> MethodSummary {
        let xs: Vec<f64> = self.accuracies.iter().map(|r| r[m]).collect();
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let std = if xs.len() < 2 {
            0.0
        } else {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        };
        MethodSummary { mean, std }
    }

    /// Accuracies are compared after rounding to four decimals.
    pub fn record(&self, other: usize) -> Record {
        let mut r = Record::default();
        for row in &self.accuracies {
            let (a, b) = (round4(row[0]), round4(row[other]));
            if a > b {
                r.wins += 1;
            } else if a < b {
                r.losses += 1;
            } else {
                r.ties += 1;
            }
        }
        r
    }

    /// `method mean std wins ties losses`; the first method's record columns
    /// are `-`.
    pub fn summary_tsv(&self) -> String {
        let mut out = String::from("method\tmean\tstd\twins\tties\tlosses\n");
        for (m, method) in self.methods.iter().enumerate() {
            let s = self.summary(m);
            let _ = write!(out, "{method}\t{:.4}\t{:.4}", s.mean, s.std);
            if m == 0 {
                out.push_str("\t-\t-\t-\n");
            } else {
                let r = self.record(m);
                let _ = writeln!(out, "\t{}\t{}\t{}", r.wins, r.ties, r.losses);
            }
        }
        out
    }

    /// One row per trial with the full-precision accuracy of each method.
    pub fn trials_tsv(&self) -> String {
        let mut out = String::from("trial");
        for m in &self.methods {
            let _ = write!(out, "\t{m}");
        }
        out.push('\n');
        for (t, row) in self.accuracies.iter().enumerate() {
            let _ = write!(out, "{t}");
            for a in row {
                let _ = write!(out, "\t{a}");
            }
            out.push('\n');
        }
        out
    }
}
