use alloc::vec;
use alloc::vec::Vec;

use crate::graph::AttributedGraph;

/// Dense symmetric n×n matrix of link scores, plus solver bookkeeping.
///
/// Baseline indices leave `iterations` at 0 and `converged` true.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix {
    n: usize,
    values: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub final_delta: f64,
}

impl ScoreMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, values: vec![0.0; n * n], iterations: 0, converged: true, final_delta: 0.0 }
    }

    pub fn identity(n: usize) -> Self {
        let mut s = Self::zeros(n);
        for i in 0..n {
            s.values[i * n + i] = 1.0;
        }
        s
    }

    /// Wraps a row-major buffer. Panics if `values.len() != n * n`.
    pub fn from_row_major(n: usize, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), n * n, "buffer is not n×n");
        Self { n, values, iterations: 0, converged: true, final_delta: 0.0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    /// Writes both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.values[i * self.n + j] = v;
        self.values[j * self.n + i] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }

    /// Sup-norm of the entrywise difference.
    pub fn max_abs_diff(&self, other: &ScoreMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.values.iter().zip(&other.values).fold(0.0, |m, (a, b)| f64::max(m, (a - b).abs()))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j).to_bits() == self.get(j, i).to_bits()))
    }

    /// Unit diagonal, entries in [0, 1], bitwise symmetric.
    pub fn is_similarity(&self) -> bool {
        self.is_symmetric()
            && (0..self.n).all(|i| self.get(i, i) == 1.0)
            && self.values.iter().all(|v| (0.0..=1.0).contains(v))
    }

    /// The `k` highest-scoring non-adjacent pairs `(i, j, score)` with `i < j`,
    /// by descending score and then lexicographically by `(i, j)`.
    pub fn top_non_edges(&self, graph: &AttributedGraph, k: usize) -> Vec<(usize, usize, f64)> {
        let n = self.n.min(graph.node_count());
        let mut pairs: Vec<(usize, usize, f64)> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !graph.has_edge(i, j) {
                    pairs.push((i, j, self.get(i, j)));
                }
            }
        }
        let order = |a: &(usize, usize, f64), b: &(usize, usize, f64)| {
            b.2.total_cmp(&a.2).then((a.0, a.1).cmp(&(b.0, b.1)))
        };
        if k < pairs.len() {
            pairs.select_nth_unstable_by(k, order);
            pairs.truncate(k);
        }
        pairs.sort_unstable_by(order);
        pairs
    }
}
