//! Undirected attributed graph stored as compressed adjacency rows.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Above this node count the O(1) membership bitset (n² bits) is skipped and
/// `has_edge` falls back to a binary search in the sorted adjacency row.
const BITSET_MAX_NODES: usize = 1 << 15;

/// A node's attribute vector, stored as sorted `(index, value)` pairs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseVector {
    indices: Vec<u32>,
    values: Vec<f64>,
    norm_sq: f64,
}

impl SparseVector {
    pub fn zeros() -> Self {
        Self::default()
    }

    /// Builds a vector of dimension `dim` from `(index, value)` pairs.
    /// Repeated indices are summed and explicit zeros are dropped.
    pub fn from_pairs(dim: usize, pairs: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        let mut pairs: Vec<(usize, f64)> = pairs.into_iter().collect();
        if let Some(&(idx, _)) = pairs.iter().find(|(idx, _)| *idx >= dim) {
            return Err(Error::Dimension { expected: dim, found: idx + 1 });
        }
        pairs.sort_by_key(|&(idx, _)| idx);
        let mut indices: Vec<u32> = Vec::with_capacity(pairs.len());
        let mut values: Vec<f64> = Vec::with_capacity(pairs.len());
        for (idx, value) in pairs {
            match indices.last() {
                Some(&last) if last as usize == idx => *values.last_mut().unwrap() += value,
                _ => {
                    indices.push(idx as u32);
                    values.push(value);
                }
            }
        }
        let mut k = 0;
        for i in 0..indices.len() {
            if values[i] != 0.0 {
                indices[k] = indices[i];
                values[k] = values[i];
                k += 1;
            }
        }
        indices.truncate(k);
        values.truncate(k);
        Ok(Self::from_sorted(indices, values))
    }

    pub fn from_dense(dense: &[f64]) -> Self {
        let (indices, values) = dense
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| (i as u32, *v))
            .unzip();
        Self::from_sorted(indices, values)
    }

    fn from_sorted(indices: Vec<u32>, values: Vec<f64>) -> Self {
        let norm_sq = values.iter().map(|v| v * v).sum::<f64>();
        Self { indices, values, norm_sq }
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sq)
    }

    /// Squared Euclidean norm, cached at construction.
    pub fn norm_squared(&self) -> f64 {
        self.norm_sq
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.indices.iter().map(|&i| i as usize).zip(self.values.iter().copied())
    }

    pub fn dot(&self, other: &SparseVector) -> f64 {
        let (mut i, mut j, mut acc) = (0, 0, 0.0);
        while i < self.indices.len() && j < other.indices.len() {
            match self.indices[i].cmp(&other.indices[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    acc += self.values[i] * other.values[j];
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    pub fn to_dense(&self, dim: usize) -> Vec<f64> {
        let mut out = vec![0.0; dim];
        for (i, v) in self.iter() {
            out[i] = v;
        }
        out
    }

    pub fn has_negative(&self) -> bool {
        self.values.iter().any(|v| *v < 0.0)
    }
}

/// The n×m attribute matrix, one sparse row per node.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AttributeMatrix {
    dim: usize,
    rows: Vec<SparseVector>,
}

impl AttributeMatrix {
    /// `n` all-zero rows of dimension `dim`.
    pub fn zeros(n: usize, dim: usize) -> Self {
        Self { dim, rows: vec![SparseVector::zeros(); n] }
    }

    pub fn new(dim: usize, rows: Vec<SparseVector>) -> Result<Self> {
        for row in &rows {
            if let Some(max) = row.indices.last() {
                if *max as usize >= dim {
                    return Err(Error::Dimension { expected: dim, found: *max as usize + 1 });
                }
            }
        }
        Ok(Self { dim, rows })
    }

    pub fn from_dense_rows(dim: usize, rows: &[Vec<f64>]) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != dim {
                return Err(Error::Dimension { expected: dim, found: row.len() });
            }
            out.push(SparseVector::from_dense(row));
        }
        Ok(Self { dim, rows: out })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, i: usize) -> &SparseVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn set_row(&mut self, i: usize, row: SparseVector) -> Result<()> {
        if i >= self.rows.len() {
            return Err(Error::NodeIndex { node: i, n: self.rows.len() });
        }
        if let Some(max) = row.indices.last() {
            if *max as usize >= self.dim {
                return Err(Error::Dimension { expected: self.dim, found: *max as usize + 1 });
            }
        }
        self.rows[i] = row;
        Ok(())
    }

    /// Number of rows containing at least one negative entry.
    pub fn negative_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.has_negative()).count()
    }
}

/// What was discarded while building a graph from raw edges.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildSummary {
    pub self_loops: usize,
    pub duplicates: usize,
}

/// Undirected simple graph with per-node attribute vectors.
///
/// Immutable once built. Nodes are dense indices `0..n`; every adjacency row
/// is sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributedGraph {
    n: usize,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    membership: Option<Vec<u64>>,
    attributes: AttributeMatrix,
}

impl AttributedGraph {
    /// Builds a graph on `n` nodes. Edges are read as unordered pairs;
    /// duplicates collapse and self-loops are dropped, both counted in the
    /// returned summary. Attributes start empty (`attr_dim == 0`).
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<(Self, BuildSummary)> {
        let mut summary = BuildSummary::default();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeIndex { node, n });
                }
            }
            if u == v {
                summary.self_loops += 1;
                continue;
            }
            pairs.push(if u < v { (u, v) } else { (v, u) });
        }
        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        summary.duplicates = before - pairs.len();

        let mut degree = vec![0usize; n];
        for &(u, v) in &pairs {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0usize; 2 * pairs.len()];
        for &(u, v) in &pairs {
            targets[cursor[u]] = v;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            cursor[v] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }

        let membership = (n <= BITSET_MAX_NODES).then(|| {
            let mut bits = vec![0u64; (n * n).div_ceil(64)];
            for &(u, v) in &pairs {
                for k in [u * n + v, v * n + u] {
                    bits[k / 64] |= 1 << (k % 64);
                }
            }
            bits
        });

        let graph = Self { n, offsets, targets, membership, attributes: AttributeMatrix::zeros(n, 0) };
        Ok((graph, summary))
    }

    /// Attaches an attribute matrix; it must have exactly one row per node.
    pub fn with_attributes(mut self, attributes: AttributeMatrix) -> Result<Self> {
        if attributes.len() != self.n {
            return Err(Error::Dimension { expected: self.n, found: attributes.len() });
        }
        self.attributes = attributes;
        Ok(self)
    }

    /// Same nodes and attributes, edge set restricted to those not in `removed`.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Self {
        let mut drop: Vec<(usize, usize)> =
            removed.iter().map(|&(u, v)| if u < v { (u, v) } else { (v, u) }).collect();
        drop.sort_unstable();
        let kept = self.edges().filter(|e| drop.binary_search(e).is_err());
        let (graph, _) = Self::from_edges(self.n, kept).expect("edges of an existing graph are in range");
        Self { attributes: self.attributes.clone(), ..graph }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn attr_dim(&self) -> usize {
        self.attributes.dim()
    }

    pub fn attributes(&self) -> &AttributeMatrix {
        &self.attributes
    }

    /// Γ(v), sorted ascending.
    pub fn neighbors(&self, v: usize) -> Result<&[usize]> {
        self.check(v)?;
        Ok(self.adjacent(v))
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check(v)?;
        Ok(self.adjacent(v).len())
    }

    /// Unchecked Γ(v) for hot loops. Panics if `v >= n`.
    #[inline]
    pub fn adjacent(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Panics if either endpoint is out of range.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "node out of range");
        match &self.membership {
            Some(bits) => {
                let k = u * self.n + v;
                bits[k / 64] >> (k % 64) & 1 == 1
            }
            None => self.adjacent(u).binary_search(&v).is_ok(),
        }
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adjacent(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v))
        })
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.adjacent(v).len()).max().unwrap_or(0)
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::NodeIndex { node: v, n: self.n })
        } else {
            Ok(())
        }
    }
}
