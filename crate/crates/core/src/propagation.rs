//! Fixed-point link-score propagation: classic SimRank and its
//! attribute-weighted variant.
//!
//! Both solvers run synchronous (Jacobi) sweeps: sweep `k + 1` reads only the
//! matrix of sweep `k`. The diagonal is pinned to 1. For a pair `(a, b)` the
//! weighted update is
//!
//! ```text
//! s'(a,b) = c / (d_b·P_a + d_a·P_b) · Σ_{x∈Γ(a)} Σ_{y∈Γ(b)} (P_xa + P_yb) · s(x,y)
//! ```
//!
//! where `P_xa` is the transmission probability of edge `(x, a)`, `P_a` its
//! node sum and `d_a` the degree of `a`. The weights of the double sum add up
//! to exactly the denominator, so every sweep is a `c`-contraction in the
//! sup norm and the fixed point does not depend on the initial matrix.
//! Pairs whose denominator vanishes score 0.

use alloc::vec;

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::score::ScoreMatrix;
use crate::similarity::{similarity_matrix, transmission_weights, SimilarityKind, SimilarityMatrix, TransmissionWeights};

/// Starting matrix for the weighted iteration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum InitMode {
    /// `s_ii = 1`, zero elsewhere.
    Identity,
    /// `s_ij = sim(i, j)` off the diagonal, `s_ii = 1`.
    #[default]
    AttributeSimilarity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationConfig {
    /// Attenuation coefficient, strictly between 0 and 1.
    pub c: f64,
    /// Stop once the sup-norm change of a sweep drops below this.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub init_mode: InitMode,
    pub similarity: SimilarityKind,
}

impl Default for PropagationConfig {
    fn default() -> Self {
        Self {
            c: 0.8,
            tolerance: 1e-6,
            max_iterations: 100,
            init_mode: InitMode::default(),
            similarity: SimilarityKind::default(),
        }
    }
}

impl PropagationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c < 1.0) {
            return Err(Error::config(alloc::format!("attenuation c must lie in (0, 1), got {}", self.c)));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::config(alloc::format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.max_iterations == 0 {
            return Err(Error::config("max_iterations must be at least 1"));
        }
        Ok(())
    }
}

/// The `d_a` factor of the weighted update's denominator.
#[inline]
fn walk_degree(graph: &AttributedGraph, v: usize) -> f64 {
    graph.adjacent(v).len() as f64
}

/// Classic SimRank from the identity matrix. `cfg.init_mode` is ignored.
pub fn simrank_classic(graph: &AttributedGraph, cfg: &PropagationConfig) -> Result<ScoreMatrix> {
    simrank_classic_with(graph, cfg, |_, _| {})
}

/// As [`simrank_classic`], reporting `(sweep, delta)` after every sweep.
pub fn simrank_classic_with(
    graph: &AttributedGraph,
    cfg: &PropagationConfig,
    observer: impl FnMut(usize, f64),
) -> Result<ScoreMatrix> {
    cfg.validate()?;
    let start = ScoreMatrix::identity(graph.node_count());
    Ok(iterate(start, cfg, observer, |s| simrank_step(s, graph, cfg.c)))
}

/// One unweighted SimRank sweep:
/// `s'(a,b) = c / (|Γ(a)|·|Γ(b)|) · Σ_{x∈Γ(a)} Σ_{y∈Γ(b)} s(x,y)`.
pub fn simrank_step(prev: &ScoreMatrix, graph: &AttributedGraph, c: f64) -> ScoreMatrix {
    let n = prev.n();
    // right[x][b] = Σ_{y∈Γ(b)} s(x, y)
    let mut right = vec![0.0; n * n];
    for x in 0..n {
        let row = prev.row(x);
        let out = &mut right[x * n..(x + 1) * n];
        for (b, slot) in out.iter_mut().enumerate() {
            *slot = graph.adjacent(b).iter().map(|&y| row[y]).sum();
        }
    }
    let mut next = ScoreMatrix::identity(n);
    for a in 0..n {
        let da = graph.adjacent(a).len();
        if da == 0 {
            continue;
        }
        for b in a + 1..n {
            let db = graph.adjacent(b).len();
            if db == 0 {
                continue;
            }
            let total: f64 = graph.adjacent(a).iter().map(|&x| right[x * n + b]).sum();
            next.set_sym(a, b, c * total / (da * db) as f64);
        }
    }
    next
}

/// Initial matrix for the weighted iteration. Negative similarities clamp to 0.
pub fn randwalk_init(graph: &AttributedGraph, sim: &SimilarityMatrix, mode: InitMode) -> ScoreMatrix {
    let n = graph.node_count();
    let mut s = ScoreMatrix::identity(n);
    if mode == InitMode::AttributeSimilarity {
        for i in 0..n {
            for j in i + 1..n {
                s.set_sym(i, j, sim.get(i, j).clamp(0.0, 1.0));
            }
        }
    }
    s
}

/// One weighted sweep evaluated literally: the double sum over `Γ(a) × Γ(b)`
/// for every pair. Reference path for [`matrix_form_step`].
pub fn randwalk_step(
    prev: &ScoreMatrix,
    graph: &AttributedGraph,
    weights: &TransmissionWeights,
    c: f64,
) -> ScoreMatrix {
    let n = prev.n();
    let mut next = ScoreMatrix::identity(n);
    for a in 0..n {
        for b in a + 1..n {
            let denom = walk_degree(graph, b) * weights.node_sum(a) + walk_degree(graph, a) * weights.node_sum(b);
            if denom <= 0.0 {
                continue;
            }
            let mut total = 0.0;
            for (&x, &p_xa) in graph.adjacent(a).iter().zip(weights.row(a)) {
                for (&y, &p_yb) in graph.adjacent(b).iter().zip(weights.row(b)) {
                    total += (p_xa + p_yb) * prev.get(x, y);
                }
            }
            next.set_sym(a, b, c * total / denom);
        }
    }
    next
}

/// One weighted sweep via two sparse products.
///
/// With `A` the adjacency and `W` the transmission-weighted adjacency, the
/// double sum splits as `Σ_{x∈Γ(a)} P_xa·(S·A)[x][b] + Σ_{x∈Γ(a)} (S·W)[x][b]`,
/// so a sweep costs O(n·m) instead of O(n²·d²).
pub fn matrix_form_step(
    prev: &ScoreMatrix,
    graph: &AttributedGraph,
    weights: &TransmissionWeights,
    c: f64,
) -> ScoreMatrix {
    let n = prev.n();
    let mut plain = vec![0.0; n * n];
    let mut weighted = vec![0.0; n * n];
    for x in 0..n {
        let row = prev.row(x);
        let plain_row = &mut plain[x * n..(x + 1) * n];
        let weighted_row = &mut weighted[x * n..(x + 1) * n];
        for b in 0..n {
            let (mut p, mut w) = (0.0, 0.0);
            for (&y, &p_yb) in graph.adjacent(b).iter().zip(weights.row(b)) {
                p += row[y];
                w += row[y] * p_yb;
            }
            plain_row[b] = p;
            weighted_row[b] = w;
        }
    }
    let mut next = ScoreMatrix::identity(n);
    for a in 0..n {
        let (pa, da) = (weights.node_sum(a), walk_degree(graph, a));
        for b in a + 1..n {
            let denom = walk_degree(graph, b) * pa + da * weights.node_sum(b);
            if denom <= 0.0 {
                continue;
            }
            let mut total = 0.0;
            for (&x, &p_xa) in graph.adjacent(a).iter().zip(weights.row(a)) {
                total += p_xa * plain[x * n + b] + weighted[x * n + b];
            }
            next.set_sym(a, b, c * total / denom);
        }
    }
    next
}

/// Attribute-weighted propagation to convergence.
///
/// Requires attributes (`attr_dim > 0`). The result carries the sweep count,
/// the last sup-norm change, and whether it fell below the tolerance before
/// `max_iterations`.
pub fn randwalk_solve(graph: &AttributedGraph, cfg: &PropagationConfig) -> Result<ScoreMatrix> {
    randwalk_solve_with(graph, cfg, |_, _| {})
}

/// As [`randwalk_solve`], reporting `(sweep, delta)` after every sweep.
pub fn randwalk_solve_with(
    graph: &AttributedGraph,
    cfg: &PropagationConfig,
    observer: impl FnMut(usize, f64),
) -> Result<ScoreMatrix> {
    cfg.validate()?;
    if graph.attr_dim() == 0 && graph.node_count() > 0 {
        return Err(Error::config("attribute-weighted propagation needs node attributes"));
    }
    let sim = similarity_matrix(graph, cfg.similarity);
    let weights = transmission_weights(graph, &sim);
    let start = randwalk_init(graph, &sim, cfg.init_mode);
    drop(sim);
    Ok(iterate(start, cfg, observer, |s| matrix_form_step(s, graph, &weights, cfg.c)))
}

fn iterate(
    mut current: ScoreMatrix,
    cfg: &PropagationConfig,
    mut observer: impl FnMut(usize, f64),
    mut step: impl FnMut(&ScoreMatrix) -> ScoreMatrix,
) -> ScoreMatrix {
    let mut delta = f64::INFINITY;
    let mut sweeps = 0;
    let mut converged = false;
    while sweeps < cfg.max_iterations {
        let next = step(&current);
        delta = next.max_abs_diff(&current);
        sweeps += 1;
        current = next;
        observer(sweeps, delta);
        if delta < cfg.tolerance {
            converged = true;
            break;
        }
    }
    current.iterations = sweeps;
    current.converged = converged;
    current.final_delta = delta;
    current
}
