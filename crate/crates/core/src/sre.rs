//! Spectral recursive embedding: threshold the spectral coordinates of both
//! vertex classes, split the graph into the two matched subgraphs `G(A,B)`
//! and `G(Aᶜ,Bᶜ)`, and recurse.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::graph::{BipartiteGraph, Bipartition, BlockSums, Side};
use crate::linalg::SvdConfig;
use crate::spectral::{embedding_coordinates, Embedding};
use crate::{Error, Result};

/// How the thresholds `c_x`, `c_y` are chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CutStrategy {
    /// `c_x = c_y = 0`.
    ZeroSplit,
    /// Evaluate the Ncut of every pair on an `n × n` grid of equally spaced
    /// thresholds spanning the x and y coordinates, keep the best.
    SweepNcut { candidates: usize },
}

impl Default for CutStrategy {
    fn default() -> Self {
        CutStrategy::SweepNcut { candidates: 32 }
    }
}

impl CutStrategy {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CutStrategy::SweepNcut { candidates } if candidates < 2 => Err(Error::InvalidConfig(
                format!("SweepNcut needs at least 2 candidates, got {candidates}"),
            )),
            _ => Ok(()),
        }
    }
}

/// When the recursion stops. Nodes with fewer than two vertices on either
/// side are never split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StopRule {
    /// Split best-first (lowest candidate Ncut) until this many leaves exist.
    TargetLeaves(usize),
    /// Split every node whose best split has Ncut at most this value.
    NcutThreshold(f64),
    /// Split every node while both of its sides have at least this many
    /// vertices.
    MinSize(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SreConfig {
    pub cut_strategy: CutStrategy,
    pub stop: StopRule,
    pub svd: SvdConfig,
}

impl Default for SreConfig {
    fn default() -> Self {
        SreConfig {
            cut_strategy: CutStrategy::default(),
            stop: StopRule::TargetLeaves(2),
            svd: SvdConfig::default(),
        }
    }
}

impl SreConfig {
    pub fn validate(&self) -> Result<()> {
        self.cut_strategy.validate()?;
        self.svd.validate()?;
        match self.stop {
            StopRule::TargetLeaves(0) => Err(Error::InvalidConfig(
                "TargetLeaves must be at least 1".into(),
            )),
            StopRule::NcutThreshold(t) if !(t >= 0.0) => Err(Error::InvalidConfig(format!(
                "NcutThreshold must be nonnegative, got {t}"
            ))),
            StopRule::MinSize(0) => Err(Error::InvalidConfig("MinSize must be at least 1".into())),
            _ => Ok(()),
        }
    }
}

/// Thresholds `(c_x, c_y)` for the embedding `(x, y)` of `g`.
///
/// With `SweepNcut(n)` the candidates are `n` equally spaced values over
/// `[min − ε, max + ε]` of each coordinate, so both trivial splits are among
/// them. Pairs leaving any of `A`, `Aᶜ`, `B`, `Bᶜ` empty are skipped. Ties on
/// Ncut go to the split with the smallest `||A| − |Aᶜ||`, then to the lowest
/// candidate indices.
pub fn select_cut_points(
    x: &[f64],
    y: &[f64],
    g: &BipartiteGraph,
    strategy: CutStrategy,
) -> Result<(f64, f64)> {
    strategy.validate()?;
    if x.len() != g.n_x() {
        return Err(Error::DimensionMismatch {
            expected: g.n_x(),
            got: x.len(),
        });
    }
    if y.len() != g.n_y() {
        return Err(Error::DimensionMismatch {
            expected: g.n_y(),
            got: y.len(),
        });
    }
    match strategy {
        CutStrategy::ZeroSplit => Ok((0.0, 0.0)),
        CutStrategy::SweepNcut { candidates } => sweep(x, y, g, candidates),
    }
}

fn linspace_around(v: &[f64], n: usize) -> Vec<f64> {
    let (lo, hi) = v
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    let eps = 1e-9 * (hi - lo).max(lo.abs()).max(hi.abs()).max(f64::MIN_POSITIVE);
    let (lo, hi) = (lo - eps, hi + eps);
    (0..n)
        .map(|a| lo + (hi - lo) * a as f64 / (n - 1) as f64)
        .collect()
}

/// Suffix sums over a histogram indexed by "number of candidates ≤ value".
fn suffix(mut h: Vec<f64>) -> Vec<f64> {
    for r in (0..h.len() - 1).rev() {
        h[r] += h[r + 1];
    }
    h
}

fn sweep(x: &[f64], y: &[f64], g: &BipartiteGraph, n: usize) -> Result<(f64, f64)> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::Unsplittable("empty vertex set".into()));
    }
    let cx = linspace_around(x, n);
    let cy = linspace_around(y, n);
    // vertex i is in A_a  ⇔  x_i ≥ cx[a]  ⇔  a < rank_x[i]
    let rank_x: Vec<usize> = x.iter().map(|&v| cx.partition_point(|&c| c <= v)).collect();
    let rank_y: Vec<usize> = y.iter().map(|&v| cy.partition_point(|&c| c <= v)).collect();

    let side = n + 1;
    let mut joint = vec![0.0; side * side];
    for (i, j, w) in g.weights().iter() {
        joint[rank_x[i] * side + rank_y[j]] += w;
    }
    // 2-D suffix sums: joint[r][s] = Σ_{r' ≥ r, s' ≥ s}
    for r in (0..side).rev() {
        for s in (0..side).rev() {
            let mut v = joint[r * side + s];
            if r + 1 < side {
                v += joint[(r + 1) * side + s];
            }
            if s + 1 < side {
                v += joint[r * side + s + 1];
            }
            if r + 1 < side && s + 1 < side {
                v -= joint[(r + 1) * side + s + 1];
            }
            joint[r * side + s] = v;
        }
    }
    let mut mass_x = vec![0.0; side];
    let mut count_x = vec![0.0; side];
    for (i, &r) in rank_x.iter().enumerate() {
        mass_x[r] += g.d_x()[i];
        count_x[r] += 1.0;
    }
    let mut mass_y = vec![0.0; side];
    let mut count_y = vec![0.0; side];
    for (j, &r) in rank_y.iter().enumerate() {
        mass_y[r] += g.d_y()[j];
        count_y[r] += 1.0;
    }
    let (mass_x, count_x, mass_y, count_y) = (
        suffix(mass_x),
        suffix(count_x),
        suffix(mass_y),
        suffix(count_y),
    );
    let total = g.total_weight();
    let (nx, ny) = (g.n_x() as f64, g.n_y() as f64);

    let mut best: Option<(f64, f64, usize, usize)> = None;
    for a in 0..n {
        let size_a = count_x[a + 1];
        if size_a == 0.0 || size_a == nx {
            continue;
        }
        let imbalance = (2.0 * size_a - nx).abs();
        for b in 0..n {
            let size_b = count_y[b + 1];
            if size_b == 0.0 || size_b == ny {
                continue;
            }
            let ab = joint[(a + 1) * side + b + 1];
            let ab_c = (mass_x[a + 1] - ab).max(0.0);
            let a_cb = (mass_y[b + 1] - ab).max(0.0);
            let a_cb_c = (total - ab - ab_c - a_cb).max(0.0);
            let ncut = BlockSums {
                ab,
                ab_c,
                a_cb,
                a_cb_c,
            }
            .ncut();
            let better = match best {
                None => true,
                Some((bn, bi, _, _)) => {
                    let tie = (ncut - bn).abs() <= 1e-12 * bn.abs().max(1e-300);
                    if tie {
                        imbalance < bi
                    } else {
                        ncut < bn
                    }
                }
            };
            if better {
                best = Some((ncut, imbalance, a, b));
            }
        }
    }
    match best {
        Some((_, _, a, b)) => Ok((cx[a], cy[b])),
        None => Err(Error::Unsplittable(
            "every candidate threshold leaves a side empty".into(),
        )),
    }
}

/// A single SRE split together with the quantities it was derived from.
#[derive(Debug, Clone, PartialEq)]
pub struct SreSplit {
    pub partition: Bipartition,
    pub ncut: f64,
    pub cut_points: (f64, f64),
    pub embedding: Embedding,
}

/// Embed, select cut points, threshold: `A = {i : x_i ≥ c_x}`, `B = {j : y_j ≥ c_y}`.
pub fn sre_split(g: &BipartiteGraph, cfg: &SreConfig) -> Result<SreSplit> {
    cfg.validate()?;
    if g.n_x() < 2 || g.n_y() < 2 {
        return Err(Error::Unsplittable(format!(
            "{}x{} graph is too small",
            g.n_x(),
            g.n_y()
        )));
    }
    let embedding = embedding_coordinates(g, &cfg.svd)?;
    let (c_x, c_y) = select_cut_points(&embedding.x, &embedding.y, g, cfg.cut_strategy)?;
    let partition = Bipartition::from_thresholds(&embedding.x, &embedding.y, c_x, c_y);
    if partition.is_degenerate() {
        return Err(Error::Unsplittable(format!(
            "threshold ({c_x}, {c_y}) leaves a side empty"
        )));
    }
    let ncut = g.ncut_value(&partition)?;
    Ok(SreSplit {
        partition,
        ncut,
        cut_points: (c_x, c_y),
        embedding,
    })
}

/// One level of SRE: the thresholded bipartition and its Ncut.
pub fn sre_bipartition(g: &BipartiteGraph, cfg: &SreConfig) -> Result<(Bipartition, f64)> {
    let s = sre_split(g, cfg)?;
    Ok((s.partition, s.ncut))
}

/// A vertex that lost all its edges when a child subgraph was induced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Singleton {
    pub side: Side,
    /// Original vertex id.
    pub id: usize,
    /// True if the vertex was thresholded into `A`/`B` (the left child).
    pub from_left: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitNode {
    /// Over the node's local vertex order (`ClusterTree::x`, `ClusterTree::y`).
    pub partition: Bipartition,
    pub ncut: f64,
    /// `G(A, B)`
    pub left: ClusterTree,
    /// `G(Aᶜ, Bᶜ)`
    pub right: ClusterTree,
    /// Isolated vertices of either child, kept as singleton leaves here.
    pub singletons: Vec<Singleton>,
}

/// Binary record of SRE splits. `x` and `y` hold original vertex ids; for a
/// split node they are the vertices of its (stripped) subgraph, and the
/// children plus singletons partition them.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterTree {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub split: Option<Box<SplitNode>>,
}

impl ClusterTree {
    pub fn leaf(x: Vec<usize>, y: Vec<usize>) -> Self {
        ClusterTree { x, y, split: None }
    }

    pub fn is_leaf(&self) -> bool {
        self.split.is_none()
    }

    /// Cluster leaves in depth-first order (left before right); singleton
    /// leaves are not included.
    pub fn leaves(&self) -> Vec<&ClusterTree> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a ClusterTree>) {
        match &self.split {
            None => out.push(self),
            Some(s) => {
                s.left.collect_leaves(out);
                s.right.collect_leaves(out);
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match &self.split {
            None => 1,
            Some(s) => s.left.leaf_count() + s.right.leaf_count(),
        }
    }

    /// `(node_id, ncut)` of every split in pre-order.
    pub fn splits(&self) -> Vec<(usize, f64)> {
        let mut out = Vec::new();
        self.collect_splits(&mut out);
        out
    }

    fn collect_splits(&self, out: &mut Vec<(usize, f64)>) {
        if let Some(s) = &self.split {
            out.push((out.len(), s.ncut));
            s.left.collect_splits(out);
            s.right.collect_splits(out);
        }
    }

    /// Cluster index (position in [`ClusterTree::leaves`]) of every vertex.
    ///
    /// Singletons take the first cluster of the child they were thresholded
    /// into. Ids absent from the tree map to `None`.
    pub fn flat_labels(&self, n_x: usize, n_y: usize) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        let mut lx = vec![None; n_x];
        let mut ly = vec![None; n_y];
        let mut next = 0;
        self.label_into(&mut lx, &mut ly, &mut next);
        (lx, ly)
    }

    fn label_into(&self, lx: &mut [Option<usize>], ly: &mut [Option<usize>], next: &mut usize) {
        match &self.split {
            None => {
                for &i in &self.x {
                    if let Some(slot) = lx.get_mut(i) {
                        *slot = Some(*next);
                    }
                }
                for &j in &self.y {
                    if let Some(slot) = ly.get_mut(j) {
                        *slot = Some(*next);
                    }
                }
                *next += 1;
            }
            Some(s) => {
                let left_first = *next;
                s.left.label_into(lx, ly, next);
                let right_first = *next;
                s.right.label_into(lx, ly, next);
                for t in &s.singletons {
                    let c = if t.from_left { left_first } else { right_first };
                    let slot = match t.side {
                        Side::X => lx.get_mut(t.id),
                        Side::Y => ly.get_mut(t.id),
                    };
                    if let Some(slot) = slot {
                        *slot = Some(c);
                    }
                }
            }
        }
    }

    /// Line-oriented listing: one `split <node_id> ncut=<value>` header line
    /// per split (pre-order), then one `<leaf_id>\t<X|Y>\t<vertex_id>` line
    /// per leaf member. Leaves are numbered depth-first; a node's singleton
    /// leaves follow its right subtree.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (id, ncut) in self.splits() {
            let _ = writeln!(out, "split {id} ncut={ncut}");
        }
        let mut next = 0;
        self.write_leaves(&mut out, &mut next);
        out
    }

    fn write_leaves(&self, out: &mut String, next: &mut usize) {
        match &self.split {
            None => {
                for &i in &self.x {
                    let _ = writeln!(out, "{next}\tX\t{i}");
                }
                for &j in &self.y {
                    let _ = writeln!(out, "{next}\tY\t{j}");
                }
                *next += 1;
            }
            Some(s) => {
                s.left.write_leaves(out, next);
                s.right.write_leaves(out, next);
                for t in &s.singletons {
                    let _ = writeln!(out, "{next}\t{}\t{}", t.side, t.id);
                    *next += 1;
                }
            }
        }
    }
}

/// Parsed form of [`ClusterTree::to_text`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TreeListing {
    pub splits: Vec<(usize, f64)>,
    pub leaves: Vec<(usize, Side, usize)>,
}

impl TreeListing {
    pub fn parse(text: &str) -> Result<Self> {
        let mut listing = TreeListing::default();
        for (n, line) in text.lines().enumerate() {
            let bad = || Error::InvalidStructure(format!("tree listing line {}: {line:?}", n + 1));
            if line.trim().is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("split ") {
                let (id, value) = rest.split_once(" ncut=").ok_or_else(bad)?;
                listing.splits.push((
                    id.parse().map_err(|_| bad())?,
                    value.parse().map_err(|_| bad())?,
                ));
                continue;
            }
            let mut fields = line.split('\t');
            let leaf = fields.next().and_then(|f| f.parse().ok()).ok_or_else(bad)?;
            let side = match fields.next() {
                Some("X") => Side::X,
                Some("Y") => Side::Y,
                _ => return Err(bad()),
            };
            let vertex = fields.next().and_then(|f| f.parse().ok()).ok_or_else(bad)?;
            if fields.next().is_some() {
                return Err(bad());
            }
            listing.leaves.push((leaf, side, vertex));
        }
        Ok(listing)
    }
}

enum Slot {
    Open {
        graph: BipartiteGraph,
        candidate: Option<Result<SreSplit>>,
    },
    Split {
        x: Vec<usize>,
        y: Vec<usize>,
        partition: Bipartition,
        ncut: f64,
        left: usize,
        right: usize,
        singletons: Vec<Singleton>,
    },
}

struct Arena<'c> {
    slots: Vec<Slot>,
    cfg: &'c SreConfig,
}

impl Arena<'_> {
    fn candidate(&mut self, idx: usize) -> Option<&SreSplit> {
        let cfg = self.cfg;
        match &mut self.slots[idx] {
            Slot::Open { graph, candidate } => {
                let c = candidate.get_or_insert_with(|| sre_split(graph, cfg));
                c.as_ref().ok()
            }
            Slot::Split { .. } => None,
        }
    }

    fn size(&self, idx: usize) -> (usize, usize) {
        match &self.slots[idx] {
            Slot::Open { graph, .. } => (graph.n_x(), graph.n_y()),
            Slot::Split { x, y, .. } => (x.len(), y.len()),
        }
    }

    /// Replaces an open slot by a split and returns the two new child slots.
    fn split(&mut self, idx: usize) -> (usize, usize) {
        let placeholder = Slot::Split {
            x: Vec::new(),
            y: Vec::new(),
            partition: Bipartition::new(Vec::new(), Vec::new()),
            ncut: 0.0,
            left: 0,
            right: 0,
            singletons: Vec::new(),
        };
        let Slot::Open {
            graph,
            candidate: Some(Ok(split)),
        } = core::mem::replace(&mut self.slots[idx], placeholder)
        else {
            unreachable!("split requires an open slot with a valid candidate");
        };
        let p = &split.partition;
        let (left, left_stripped) = graph.induced(&p.a(), &p.b());
        let (right, right_stripped) = graph.induced(&p.a_complement(), &p.b_complement());
        let mut singletons = Vec::new();
        for (stripped, from_left) in [(&left_stripped, true), (&right_stripped, false)] {
            singletons.extend(stripped.x.iter().map(|&id| Singleton {
                side: Side::X,
                id,
                from_left,
            }));
            singletons.extend(stripped.y.iter().map(|&id| Singleton {
                side: Side::Y,
                id,
                from_left,
            }));
        }
        let l = self.slots.len();
        self.slots.push(Slot::Open {
            graph: left,
            candidate: None,
        });
        self.slots.push(Slot::Open {
            graph: right,
            candidate: None,
        });
        self.slots[idx] = Slot::Split {
            x: graph.x_ids().to_vec(),
            y: graph.y_ids().to_vec(),
            partition: split.partition,
            ncut: split.ncut,
            left: l,
            right: l + 1,
            singletons,
        };
        (l, l + 1)
    }

    fn splittable(&mut self, idx: usize, min_size: usize) -> bool {
        let (nx, ny) = self.size(idx);
        nx >= min_size.max(2) && ny >= min_size.max(2) && self.candidate(idx).is_some()
    }

    fn assemble(&mut self, idx: usize) -> ClusterTree {
        let slot = core::mem::replace(
            &mut self.slots[idx],
            Slot::Split {
                x: Vec::new(),
                y: Vec::new(),
                partition: Bipartition::new(Vec::new(), Vec::new()),
                ncut: 0.0,
                left: 0,
                right: 0,
                singletons: Vec::new(),
            },
        );
        match slot {
            Slot::Open { graph, .. } => {
                ClusterTree::leaf(graph.x_ids().to_vec(), graph.y_ids().to_vec())
            }
            Slot::Split {
                x,
                y,
                partition,
                ncut,
                left,
                right,
                singletons,
            } => {
                let left = self.assemble(left);
                let right = self.assemble(right);
                ClusterTree {
                    x,
                    y,
                    split: Some(Box::new(SplitNode {
                        partition,
                        ncut,
                        left,
                        right,
                        singletons,
                    })),
                }
            }
        }
    }
}

/// Recursive SRE under the configured stop rule. Nodes that cannot be split
/// become leaves.
pub fn sre_recursive(g: &BipartiteGraph, cfg: &SreConfig) -> Result<ClusterTree> {
    cfg.validate()?;
    let mut arena = Arena {
        slots: vec![Slot::Open {
            graph: g.clone(),
            candidate: None,
        }],
        cfg,
    };
    match cfg.stop {
        StopRule::TargetLeaves(k) => {
            let mut open = vec![0usize];
            let mut leaves = 1;
            while leaves < k {
                let mut pick: Option<(f64, usize)> = None;
                for (pos, &idx) in open.iter().enumerate() {
                    if !arena.splittable(idx, 2) {
                        continue;
                    }
                    let ncut = arena.candidate(idx).map_or(f64::INFINITY, |s| s.ncut);
                    if pick.is_none_or(|(best, _)| ncut < best) {
                        pick = Some((ncut, pos));
                    }
                }
                let Some((_, pos)) = pick else { break };
                let idx = open.remove(pos);
                let (l, r) = arena.split(idx);
                open.push(l);
                open.push(r);
                leaves += 1;
            }
        }
        StopRule::NcutThreshold(tau) => {
            let mut stack = vec![0usize];
            while let Some(idx) = stack.pop() {
                if !arena.splittable(idx, 2) || arena.candidate(idx).is_none_or(|s| s.ncut > tau) {
                    continue;
                }
                let (l, r) = arena.split(idx);
                stack.push(r);
                stack.push(l);
            }
        }
        StopRule::MinSize(m) => {
            let mut stack = vec![0usize];
            while let Some(idx) = stack.pop() {
                if !arena.splittable(idx, m) {
                    continue;
                }
                let (l, r) = arena.split(idx);
                stack.push(r);
                stack.push(l);
            }
        }
    }
    Ok(arena.assemble(0))
}
