//! Cross-checks of the production code against exhaustive and dense
//! references on small random graphs.
//!
//! Per graph:
//! - `ncut`: the Ncut under test equals the assoc-based definition on every
//!   non-degenerate bipartition (relative 1e-10);
//! - `relaxation`: the exhaustive minimum is at least `1 − σ₂` (1e-8);
//! - `sre`: the SRE bipartition is no better than the exhaustive minimum;
//! - `spectrum`: dense Jacobi on the scaled matrix gives `σ₁ = 1`, no
//!   value above 1, and the Lanczos `σ₂` (1e-8).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{ensure, Result};
use bicut_core::oracle::{jacobi_svd, ncut_by_definition, BRUTE_FORCE_LIMIT};
use bicut_core::synth::random_weights;
use bicut_core::{
    second_triplet_scaled, sre_bipartition, BipartiteGraph, Bipartition, SparseMatrix, SreConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::io::matrix_market;

pub type NcutFn<'a> = &'a dyn Fn(&BipartiteGraph, &Bipartition) -> bicut_core::Result<f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    /// Largest total vertex count `|X| + |Y|`, between 4 and the exhaustive
    /// search limit.
    pub max_size: usize,
    pub graphs: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub graph: usize,
    pub check: &'static str,
    pub detail: String,
    pub weights: SparseMatrix,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CheckReport {
    pub graphs: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl CheckConfig {
    pub fn validate(&self) -> Result<()> {
        ensure!(
            (4..=BRUTE_FORCE_LIMIT).contains(&self.max_size),
            "max size must be between 4 and {BRUTE_FORCE_LIMIT}, got {}",
            self.max_size
        );
        ensure!(self.graphs >= 1, "at least one graph is required");
        Ok(())
    }
}

pub fn run(cfg: &CheckConfig) -> Result<CheckReport> {
    run_with(cfg, &|g, p| g.ncut_value(p))
}

/// As [`run`], with the Ncut implementation under test supplied by the
/// caller.
pub fn run_with(cfg: &CheckConfig, ncut: NcutFn<'_>) -> Result<CheckReport> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = CheckReport {
        graphs: cfg.graphs,
        ..CheckReport::default()
    };
    for graph in 0..cfg.graphs {
        let total = rng.gen_range(4..=cfg.max_size);
        let m = rng.gen_range(2..=total - 2);
        let density = rng.gen_range(0.3..=1.0);
        let w = random_weights(m, total - m, density, &mut rng);
        for (check, outcome) in check_graph(&w, ncut)? {
            report.checks += 1;
            if let Err(detail) = outcome {
                report.failures.push(Failure {
                    graph,
                    check,
                    detail,
                    weights: w.clone(),
                });
            }
        }
    }
    Ok(report)
}

type Outcome = (&'static str, Result<(), String>);

fn check_graph(w: &SparseMatrix, ncut: NcutFn<'_>) -> Result<Vec<Outcome>> {
    let g = BipartiteGraph::new(w.clone())?;
    let (nx, ny) = (g.n_x(), g.n_y());

    let mut best = f64::INFINITY;
    let mut mismatch = None;
    for xm in (1u64..(1 << nx) - 1).filter(|m| m & 1 == 1) {
        for ym in 1u64..(1 << ny) - 1 {
            let p = Bipartition::from_masks(nx, ny, xm, ym);
            let got = ncut(&g, &p)?;
            let want = ncut_by_definition(&g, &p)?;
            let agree = got == want || (got - want).abs() <= 1e-10 * want.abs().max(1.0);
            if mismatch.is_none() && !agree {
                mismatch = Some(format!(
                    "masks ({xm:#b}, {ym:#b}): got {got}, definition {want}"
                ));
            }
            best = best.min(got);
        }
    }
    let mut out: Vec<Outcome> = vec![("ncut", mismatch.map_or(Ok(()), Err))];

    let dense = jacobi_svd(&g.scaled_matrix().to_dense());
    let sigma2 = dense.get(1).map_or(0.0, |t| t.sigma);
    let bound = 1.0 - sigma2;
    out.push((
        "relaxation",
        if best >= bound - 1e-8 {
            Ok(())
        } else {
            Err(format!("minimum Ncut {best} below 1 - sigma2 = {bound}"))
        },
    ));

    let (_, sre) = sre_bipartition(&g, &SreConfig::default())?;
    out.push((
        "sre",
        if sre >= best - 1e-12 {
            Ok(())
        } else {
            Err(format!("SRE Ncut {sre} below exhaustive minimum {best}"))
        },
    ));

    let lanczos = second_triplet_scaled(&g, &SreConfig::default().svd)?.sigma;
    let s1 = dense[0].sigma;
    let spectrum = if (s1 - 1.0).abs() > 1e-10 {
        Err(format!("sigma1 = {s1}"))
    } else if let Some(t) = dense.iter().find(|t| t.sigma > 1.0 + 1e-10) {
        Err(format!("singular value {} above 1", t.sigma))
    } else if (lanczos - sigma2).abs() > 1e-8 {
        Err(format!("Lanczos sigma2 {lanczos}, dense {sigma2}"))
    } else {
        Ok(())
    };
    out.push(("spectrum", spectrum));
    Ok(out)
}

/// Writes one MatrixMarket file per failure, with the check and detail as
/// comment lines. Returns the paths written.
pub fn write_replays(report: &CheckReport, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for (i, f) in report.failures.iter().enumerate() {
        let path = dir.join(format!("failure-{i}-{}.mtx", f.check));
        let mut body = Vec::new();
        matrix_market::write(&f.weights, &mut body)?;
        let body = String::from_utf8(body)?;
        let (header, rest) = body.split_once('\n').unwrap_or((&body, ""));
        let mut text = format!("{header}\n");
        let _ = writeln!(text, "% check: {}", f.check);
        let _ = writeln!(text, "% graph: {}", f.graph);
        for line in f.detail.lines() {
            let _ = writeln!(text, "% {line}");
        }
        text.push_str(rest);
        std::fs::write(&path, text)?;
        paths.push(path);
    }
    Ok(paths)
}
