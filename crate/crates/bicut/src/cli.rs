//! Command-line interface. Exit status: 0 on success, 1 on a usage error,
//! 2 on a runtime failure.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use bicut_core::correspondence::equivalence_report;
use bicut_core::oracle::BRUTE_FORCE_LIMIT;
use bicut_core::text::{FeatureSelector, TokenizerConfig, WeightingScheme};
use bicut_core::{BipartiteGraph, CutStrategy, SreConfig, StopRule, SvdConfig};
use clap::{ArgAction, Args, Parser, Subcommand};

use crate::experiment::{self, ExperimentSpec};
use crate::io::{corpus, matrix_market, pgm, tables};
use crate::options::{parse_cut, parse_selector, parse_stop, parse_weighting, Method};
use crate::oracle_check::{self, CheckConfig};
use crate::pipeline::{
    cluster_documents, evaluate, prepare, spectral_order, ClusterOptions, Preprocess,
};
use crate::report::{top_terms, Summary};

#[derive(Debug, Parser)]
#[command(
    name = "bicut",
    version,
    about = "Bipartite spectral co-clustering of documents and terms"
)]
#[command(args_override_self = true)]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tokenize a corpus and write its term-document matrix.
    BuildMatrix(BuildMatrixArgs),
    /// Cluster the documents of a corpus or matrix.
    Cluster(ClusterArgs),
    /// Compare methods over repeated samples of a labeled corpus.
    Experiment(ExperimentArgs),
    /// Order rows and columns by their spectral coordinates.
    Reorder(ReorderArgs),
    /// Check the implementation against exhaustive references on small
    /// random graphs.
    OracleCheck(OracleCheckArgs),
}

#[derive(Debug, Args)]
struct TextArgs {
    /// Keep letter case.
    #[arg(long)]
    no_lowercase: bool,
    /// Drop everything up to the first blank line of each document.
    #[arg(long)]
    strip_headers: bool,
    /// Apply the suffix stemmer.
    #[arg(long)]
    stem: bool,
    /// Feature selectors applied in order: min-count:N, min-df:N, top-mi:N.
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', value_parser = parse_selector)]
    select: Vec<FeatureSelector>,
    /// raw, trim:N or tfidf.
    #[arg(long, default_value = "raw", value_parser = parse_weighting)]
    weighting: WeightingScheme,
}

impl TextArgs {
    fn preprocess(&self) -> Preprocess {
        Preprocess {
            tokenizer: TokenizerConfig {
                lowercase: !self.no_lowercase,
                strip_headers: self.strip_headers,
                stem: self.stem,
            },
            selectors: self.select.clone(),
            weighting: self.weighting,
        }
    }
}

#[derive(Debug, Args)]
struct SreArgs {
    /// Threshold choice: zero or sweep:N.
    #[arg(long, default_value = "sweep:32", value_parser = parse_cut)]
    cut: CutStrategy,
    /// Recursion stop rule: leaves:K, ncut:T or min-size:M (default leaves:K
    /// with K the cluster count).
    #[arg(long, value_parser = parse_stop)]
    stop: Option<StopRule>,
}

impl SreArgs {
    fn options(&self, method: Method, k: usize, seed: u64) -> ClusterOptions {
        ClusterOptions {
            sre: SreConfig {
                cut_strategy: self.cut,
                ..SreConfig::default()
            },
            stop_rule: self.stop,
            ..ClusterOptions::new(method, k, seed)
        }
    }
}

#[derive(Debug, Args)]
struct BuildMatrixArgs {
    /// Directory of `<label>/<doc_id>.txt` files, or a TSV file.
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    text: TextArgs,
}

#[derive(Debug, Args)]
struct ClusterArgs {
    #[arg(long, required_unless_present = "matrix", conflicts_with = "matrix")]
    corpus: Option<PathBuf>,
    /// Terms × documents MatrixMarket file.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Vocabulary for `--matrix`, one term per line.
    #[arg(long, requires = "matrix")]
    vocab: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::Sre)]
    method: Method,
    /// Number of clusters.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Terms listed per cluster in the report.
    #[arg(long, default_value_t = 10)]
    top_terms: usize,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    text: TextArgs,
    #[command(flatten)]
    sre: SreArgs,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    #[arg(long)]
    corpus: PathBuf,
    /// Class labels to mix.
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', required = true)]
    labels: Vec<String>,
    /// Documents drawn per class, aligned with `--labels`.
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', required = true)]
    mixture: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// The first method is compared against the others.
    #[arg(long, value_enum, action = ArgAction::Set, value_delimiter = ',', default_value = "sre,pddp,kmeans")]
    methods: Vec<Method>,
    /// Directory for `summary.tsv` and `trials.tsv`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    text: TextArgs,
    #[command(flatten)]
    sre: SreArgs,
}

#[derive(Debug, Args)]
struct ReorderArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Largest image side in pixels; larger matrices are binned.
    #[arg(long, default_value_t = 2048)]
    max_image: usize,
}

#[derive(Debug, Args)]
struct OracleCheckArgs {
    /// Largest total vertex count of a test graph, 4 to 20.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(4..=BRUTE_FORCE_LIMIT as u64))]
    max_size: u64,
    #[arg(long, default_value_t = 50)]
    graphs: usize,
    /// Directory for replay files of failing graphs.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Also print the correspondence-analysis comparison for this matrix as
    /// one JSON line.
    #[arg(long)]
    equivalence: Option<PathBuf>,
}

/// Parses `args` (including the program name), runs the command and maps
/// the outcome to an exit status.
pub fn main_with<I: IntoIterator<Item = OsString>>(args: I) -> ExitCode {
    let args = match crate::config::expand(args.into_iter().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::BuildMatrix(a) => build_matrix(&a),
        Command::Cluster(a) => cluster(&a, cli.seed),
        Command::Experiment(a) => run_experiment(&a, cli.seed),
        Command::Reorder(a) => reorder(&a, cli.seed),
        Command::OracleCheck(a) => oracle(&a, cli.seed),
    }
}

fn write(dir: &Path, name: &str, contents: impl AsRef<[u8]>) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}

fn load_corpus(path: &Path) -> Result<bicut_core::text::Corpus> {
    corpus::load(path).with_context(|| format!("loading corpus {}", path.display()))
}

fn load_matrix(path: &Path) -> Result<bicut_core::SparseMatrix> {
    matrix_market::load(path).with_context(|| format!("reading matrix {}", path.display()))
}

fn build_matrix(a: &BuildMatrixArgs) -> Result<()> {
    let c = load_corpus(&a.corpus)?;
    let prep = prepare(&c, &a.text.preprocess())?;
    fs::create_dir_all(&a.out)?;
    let mut mtx = Vec::new();
    matrix_market::write(&prep.weighted, &mut mtx)?;
    write(&a.out, "matrix.mtx", mtx)?;
    write(
        &a.out,
        "vocab.txt",
        tables::vocabulary_to_text(&prep.counts.vocabulary),
    )?;
    let docs: String = c
        .documents()
        .iter()
        .map(|d| format!("{}\t{}\n", d.id, d.label.as_deref().unwrap_or("")))
        .collect();
    write(&a.out, "documents.tsv", docs)?;
    println!(
        "{} terms x {} documents, {} nonzeros, {} empty documents",
        prep.weighted.n_rows(),
        prep.weighted.n_cols(),
        prep.weighted.nnz(),
        prep.counts.empty_documents.len()
    );
    Ok(())
}

fn cluster(a: &ClusterArgs, seed: u64) -> Result<()> {
    let (w, vocab, ids, truth) = if let Some(path) = &a.corpus {
        let c = load_corpus(path)?;
        let prep = prepare(&c, &a.text.preprocess())?;
        let ids: Vec<String> = c.documents().iter().map(|d| d.id.clone()).collect();
        let names = c
            .labels()
            .into_iter()
            .map(str::to_string)
            .collect::<Vec<_>>();
        let truth =
            (!names.is_empty() && c.documents().iter().all(|d| d.label.is_some())).then(|| {
                let t = c.documents().iter().map(|d| {
                    names
                        .iter()
                        .position(|n| Some(n.as_str()) == d.label.as_deref())
                        .unwrap_or(0)
                });
                (t.collect::<Vec<_>>(), names)
            });
        (prep.weighted, Some(prep.counts.vocabulary), ids, truth)
    } else {
        let path = a
            .matrix
            .as_ref()
            .context("either --corpus or --matrix is required")?;
        let w = load_matrix(path)?;
        let vocab = match &a.vocab {
            Some(p) => {
                let v = tables::parse_vocabulary(&fs::read_to_string(p)?);
                ensure!(
                    v.len() == w.n_rows(),
                    "vocabulary has {} terms but the matrix has {} rows",
                    v.len(),
                    w.n_rows()
                );
                Some(v)
            }
            None => None,
        };
        let ids = (0..w.n_cols()).map(|j| j.to_string()).collect();
        (w, vocab, ids, None)
    };

    let opts = a.sre.options(a.method, a.k, seed);
    let c = cluster_documents(&w, &opts)?;
    fs::create_dir_all(&a.out)?;
    write(
        &a.out,
        "assignments.tsv",
        tables::assignment_to_text(&ids, &c.labels),
    )?;
    if let Some(tree) = &c.tree {
        write(&a.out, "tree.txt", tree.to_text())?;
    }
    let mut acc = None;
    if let Some((truth, names)) = &truth {
        let (cm, accuracy) = evaluate(&c, truth, names.len())?;
        write(
            &a.out,
            "confusion.tsv",
            tables::confusion_to_tsv(&cm, names),
        )?;
        acc = Some(accuracy);
    }
    let terms = match &vocab {
        Some(v) => top_terms(&w, v, &c.labels, c.k, a.top_terms),
        None => Vec::new(),
    };
    let method = a.method.to_string();
    let summary = Summary {
        method: &method,
        labels: &c.labels,
        k: c.k,
        top_terms: &terms,
        unplaced: c.unplaced.len(),
        accuracy: acc,
    };
    let text = summary.to_text();
    write(&a.out, "report.txt", &text)?;
    print!("{text}");
    Ok(())
}

fn run_experiment(a: &ExperimentArgs, seed: u64) -> Result<()> {
    let c = load_corpus(&a.corpus)?;
    let spec = ExperimentSpec {
        labels: a.labels.clone(),
        mixture: a.mixture.clone(),
        trials: a.trials,
        seed,
        methods: a.methods.clone(),
        preprocess: a.text.preprocess(),
        cluster: a.sre.options(Method::Sre, a.labels.len(), seed),
    };
    let outcome = experiment::run(&c, &spec)?;
    let summary = outcome.summary_tsv();
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir)?;
        write(dir, "summary.tsv", &summary)?;
        write(dir, "trials.tsv", outcome.trials_tsv())?;
    }
    print!("{summary}");
    Ok(())
}

fn reorder(a: &ReorderArgs, seed: u64) -> Result<()> {
    let w = load_matrix(&a.matrix)?;
    let r = spectral_order(
        &w,
        &SvdConfig {
            seed,
            ..SvdConfig::default()
        },
    )?;
    fs::create_dir_all(&a.out)?;
    write(
        &a.out,
        "row_order.txt",
        tables::permutation_to_text(&r.rows),
    )?;
    write(
        &a.out,
        "col_order.txt",
        tables::permutation_to_text(&r.cols),
    )?;
    let mut img = Vec::new();
    pgm::write_pattern(&w, &r.rows, &r.cols, a.max_image, &mut img)?;
    write(&a.out, "pattern.pgm", img)?;
    println!("sigma2\t{}", r.sigma);
    Ok(())
}

fn oracle(a: &OracleCheckArgs, seed: u64) -> Result<()> {
    if let Some(path) = &a.equivalence {
        let (g, _) = BipartiteGraph::strip(load_matrix(path)?);
        let r = equivalence_report(&g)?;
        let line = serde_json::json!({
            "rows": g.n_x(),
            "cols": g.n_y(),
            "proportionality_constant": r.proportionality_constant,
            "max_abs_deviation": r.max_abs_deviation,
        });
        println!("{line}");
    }
    let cfg = CheckConfig {
        max_size: a.max_size as usize,
        graphs: a.graphs,
        seed,
    };
    let report = oracle_check::run(&cfg)?;
    println!(
        "{} graphs, {} checks, {} failures",
        report.graphs,
        report.checks,
        report.failures.len()
    );
    if report.failures.is_empty() {
        return Ok(());
    }
    let paths = oracle_check::write_replays(&report, &a.out)?;
    for (f, p) in report.failures.iter().zip(&paths) {
        eprintln!(
            "FAIL graph {} [{}] {}: replay {}",
            f.graph,
            f.check,
            f.detail,
            p.display()
        );
    }
    bail!(
        "{} of {} checks failed",
        report.failures.len(),
        report.checks
    )
}
