//! Attribute similarity between nodes and the per-edge transmission
//! probabilities derived from it.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, SparseVector};

/// Which vector similarity feeds the transmission probabilities.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SimilarityKind {
    #[default]
    Cosine,
}

/// Cosine of the angle between two dense vectors. Zero when either vector
/// has zero norm.
pub fn cosine_similarity(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Dimension { expected: a.len(), found: b.len() });
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>();
    let nb = b.iter().map(|x| x * x).sum::<f64>();
    Ok(normalized(dot, na, nb))
}

/// Sparse counterpart of [`cosine_similarity`], using cached norms.
pub fn sparse_cosine(a: &SparseVector, b: &SparseVector) -> f64 {
    normalized(a.dot(b), a.norm_squared(), b.norm_squared())
}

// `sqrt(x·x) == x` in IEEE arithmetic, so identical vectors give exactly 1.
fn normalized(dot: f64, norm_sq_a: f64, norm_sq_b: f64) -> f64 {
    if norm_sq_a == 0.0 || norm_sq_b == 0.0 {
        return 0.0;
    }
    (dot / libm::sqrt(norm_sq_a * norm_sq_b)).clamp(-1.0, 1.0)
}

/// Dense symmetric n×n matrix of attribute similarities.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    n: usize,
    values: Vec<f64>,
}

impl SimilarityMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }
}

/// All-pairs attribute similarity. The upper triangle is computed and
/// mirrored, so the result is bitwise symmetric.
pub fn similarity_matrix(graph: &AttributedGraph, kind: SimilarityKind) -> SimilarityMatrix {
    let n = graph.node_count();
    let rows = graph.attributes().rows();
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let s = match kind {
                SimilarityKind::Cosine => sparse_cosine(&rows[i], &rows[j]),
            };
            values[i * n + j] = s;
            values[j * n + i] = s;
        }
    }
    SimilarityMatrix { n, values }
}

/// Per-edge transmission probabilities `P_ij` and their per-node sums `P_i`.
///
/// `edge_prob[k]` is aligned with the CSR adjacency: it belongs to the edge
/// from `i` to `graph.adjacent(i)[k - offset(i)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionWeights {
    offsets: Vec<usize>,
    edge_prob: Vec<f64>,
    node_sum: Vec<f64>,
}

impl TransmissionWeights {
    /// Probabilities on the edges out of `i`, aligned with `graph.adjacent(i)`.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.edge_prob[self.offsets[i]..self.offsets[i + 1]]
    }

    /// `P_i`.
    #[inline]
    pub fn node_sum(&self, i: usize) -> f64 {
        self.node_sum[i]
    }

    /// `P_ij`, zero when `(i, j)` is not an edge.
    pub fn edge_prob(&self, graph: &AttributedGraph, i: usize, j: usize) -> f64 {
        match graph.adjacent(i).binary_search(&j) {
            Ok(k) => self.row(i)[k],
            Err(_) => 0.0,
        }
    }
}

/// `P_ij = sim(i, j)` on every edge (negative similarities clamp to 0) and
/// `P_i = Σ_{v ∈ Γ(i)} P_iv`.
pub fn transmission_weights(graph: &AttributedGraph, sim: &SimilarityMatrix) -> TransmissionWeights {
    let n = graph.node_count();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    let mut edge_prob = Vec::with_capacity(2 * graph.edge_count());
    let mut node_sum = Vec::with_capacity(n);
    for i in 0..n {
        let mut total = 0.0;
        for &j in graph.adjacent(i) {
            let p = sim.get(i, j).max(0.0);
            edge_prob.push(p);
            total += p;
        }
        node_sum.push(total);
        offsets.push(edge_prob.len());
    }
    TransmissionWeights { offsets, edge_prob, node_sum }
}
