//! Probe-set splitting and AUC.
//!
//! AUC is the probability that a held-out (probe) edge outscores a pair that
//! is an edge neither in the training graph nor in the probe set, ties counted
//! half: `(n_higher + 0.5·n_equal) / n_comparisons`. Two scores tie when they
//! differ by at most [`TIE_TOLERANCE`].

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::score::ScoreMatrix;
use crate::seed::rng_from_seed;

pub const TIE_TOLERANCE: f64 = 1e-12;

/// Exact AUC enumerates non-edges only up to this many node pairs (n²).
pub const EXACT_PAIR_LIMIT: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeSplit {
    pub train: AttributedGraph,
    /// Removed edges as `(u, v)` with `u < v`, sorted.
    pub probe: Vec<(usize, usize)>,
    pub seed: u64,
}

/// Removes `round(fraction · m)` edges chosen uniformly without replacement.
/// Attributes are carried over untouched.
pub fn split_probe(graph: &AttributedGraph, fraction: f64, seed: u64) -> Result<ProbeSplit> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::config(format!("probe fraction must lie in (0, 1), got {fraction}")));
    }
    let m = graph.edge_count();
    let k = libm::round(fraction * m as f64) as usize;
    if k == 0 || k >= m {
        return Err(Error::config(format!(
            "probe fraction {fraction} of {m} edges leaves an empty probe or training set"
        )));
    }
    let mut edges: Vec<(usize, usize)> = graph.edges().collect();
    let mut rng = rng_from_seed(seed);
    let (chosen, _) = edges.partial_shuffle(&mut rng, k);
    let mut probe = chosen.to_vec();
    probe.sort_unstable();
    let train = graph.without_edges(&probe);
    Ok(ProbeSplit { train, probe, seed })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AucMode {
    Sampled,
    #[default]
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AucResult {
    pub auc: f64,
    pub n_comparisons: u64,
    pub n_higher: u64,
    pub n_equal: u64,
    pub mode: AucMode,
}

impl AucResult {
    pub fn from_counts(n_higher: u64, n_equal: u64, n_comparisons: u64, mode: AucMode) -> Self {
        let auc = (n_higher as f64 + 0.5 * n_equal as f64) / n_comparisons as f64;
        Self { auc, n_comparisons, n_higher, n_equal, mode }
    }
}

#[inline]
fn compare(positive: f64, negative: f64) -> (bool, bool) {
    let d = positive - negative;
    (d > TIE_TOLERANCE, d.abs() <= TIE_TOLERANCE)
}

fn normalized(probe: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    probe.iter().map(|&(u, v)| if u < v { (u, v) } else { (v, u) }).collect()
}

fn check_inputs(scores: &ScoreMatrix, probe: &[(usize, usize)], train: &AttributedGraph) -> Result<usize> {
    let n = train.node_count();
    if scores.n() != n {
        return Err(Error::Dimension { expected: n, found: scores.n() });
    }
    if probe.is_empty() {
        return Err(Error::evaluation("probe set is empty"));
    }
    for &(u, v) in probe {
        if u >= n || v >= n {
            return Err(Error::NodeIndex { node: u.max(v), n });
        }
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let pool = pairs.saturating_sub(train.edge_count() + normalized(probe).len());
    if pool == 0 {
        return Err(Error::evaluation("no non-edges left to compare against"));
    }
    Ok(pool)
}

/// Monte Carlo AUC from `samples` independent (probe edge, non-edge) draws.
/// Non-edges are drawn by rejection from uniform pairs `i < j`.
pub fn auc_sampled(
    scores: &ScoreMatrix,
    probe: &[(usize, usize)],
    train: &AttributedGraph,
    samples: u64,
    seed: u64,
) -> Result<AucResult> {
    check_inputs(scores, probe, train)?;
    if samples == 0 {
        return Err(Error::config("AUC sample count must be positive"));
    }
    let held_out = normalized(probe);
    let n = train.node_count();
    let mut rng = rng_from_seed(seed);
    let (mut higher, mut equal) = (0u64, 0u64);
    for _ in 0..samples {
        let (pu, pv) = probe[rng.gen_range(0..probe.len())];
        let (i, j) = loop {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i == j {
                continue;
            }
            let pair = if i < j { (i, j) } else { (j, i) };
            if !train.has_edge(pair.0, pair.1) && !held_out.contains(&pair) {
                break pair;
            }
        };
        let (h, e) = compare(scores.get(pu, pv), scores.get(i, j));
        higher += h as u64;
        equal += e as u64;
    }
    Ok(AucResult::from_counts(higher, equal, samples, AucMode::Sampled))
}

/// AUC over every (probe edge, non-edge) combination.
///
/// Non-edge scores are sorted once; each probe score then finds its strictly
/// lower and tied counts by binary search.
pub fn auc_exact(scores: &ScoreMatrix, probe: &[(usize, usize)], train: &AttributedGraph) -> Result<AucResult> {
    check_inputs(scores, probe, train)?;
    let n = train.node_count();
    if n.saturating_mul(n) > EXACT_PAIR_LIMIT {
        return Err(Error::config(format!(
            "exact AUC over {n} nodes exceeds {EXACT_PAIR_LIMIT} pairs; use sampled AUC instead"
        )));
    }
    let held_out = normalized(probe);
    let mut negatives = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !train.has_edge(i, j) && !held_out.contains(&(i, j)) {
                negatives.push(scores.get(i, j));
            }
        }
    }
    let positives: Vec<f64> = probe.iter().map(|&(u, v)| scores.get(u, v)).collect();
    Ok(auc_from_scores(&positives, &negatives))
}

/// Exact AUC of two score samples: positives against negatives.
pub fn auc_from_scores(positives: &[f64], negatives: &[f64]) -> AucResult {
    let mut sorted = negatives.to_vec();
    sorted.sort_by(f64::total_cmp);
    let (mut higher, mut equal) = (0u64, 0u64);
    for &p in positives {
        // `p - q` is non-increasing along the sorted negatives
        let below = sorted.partition_point(|&q| p - q > TIE_TOLERANCE);
        let not_above = sorted.partition_point(|&q| p - q >= -TIE_TOLERANCE);
        higher += below as u64;
        equal += (not_above - below) as u64;
    }
    let total = positives.len() as u64 * negatives.len() as u64;
    AucResult::from_counts(higher, equal, total, AucMode::Exact)
}
