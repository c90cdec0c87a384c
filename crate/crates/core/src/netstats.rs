//! Topological summary statistics of a graph.
//!
//! Conventions: clustering is the mean local coefficient (nodes of degree < 2
//! contribute 0 unless excluded), efficiency is global efficiency with
//! `1/∞ = 0` across components, and assortativity is the Pearson correlation
//! of endpoint degrees over edges counted in both orientations.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;

/// How nodes with fewer than two neighbours enter the average clustering.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum LowDegreeNodes {
    #[default]
    CountAsZero,
    Exclude,
}

/// One row of the network summary table.
#[derive(Debug, Clone, PartialEq)]
pub struct NetStatsRow {
    pub n_nodes: usize,
    pub n_edges: usize,
    pub n_attributes: usize,
    pub largest_component: usize,
    pub n_components: usize,
    pub efficiency: f64,
    pub clustering: f64,
    /// `None` when the degree variance over edges is zero (e.g. regular graphs).
    pub assortativity: Option<f64>,
    pub avg_degree: f64,
}

impl NetStatsRow {
    /// Components as `largest/count`.
    pub fn num_c(&self) -> String {
        format_components(self.largest_component, self.n_components)
    }
}

pub fn format_components(largest: usize, count: usize) -> String {
    format!("{largest}/{count}")
}

/// `(size of largest connected component, number of components)`.
pub fn components(graph: &AttributedGraph) -> (usize, usize) {
    let n = graph.node_count();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    let (mut largest, mut count) = (0, 0);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        count += 1;
        seen[root] = true;
        queue.push_back(root);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &u in graph.adjacent(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        largest = largest.max(size);
    }
    (largest, count)
}

/// `2M / N` from raw counts.
pub fn avg_degree_from_counts(n_nodes: usize, n_edges: usize) -> Result<f64> {
    if n_nodes == 0 {
        return Err(Error::undefined("average degree of a graph with no nodes"));
    }
    Ok(2.0 * n_edges as f64 / n_nodes as f64)
}

pub fn avg_degree(graph: &AttributedGraph) -> Result<f64> {
    avg_degree_from_counts(graph.node_count(), graph.edge_count())
}

/// Triangles through `v`.
fn triangles_at(graph: &AttributedGraph, v: usize) -> usize {
    let nb = graph.adjacent(v);
    let mut t = 0;
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if graph.has_edge(a, b) {
                t += 1;
            }
        }
    }
    t
}

pub fn local_clustering(graph: &AttributedGraph, v: usize) -> f64 {
    let d = graph.adjacent(v).len();
    if d < 2 {
        return 0.0;
    }
    triangles_at(graph, v) as f64 / (d * (d - 1) / 2) as f64
}

pub fn clustering_coefficient(graph: &AttributedGraph) -> f64 {
    clustering_coefficient_with(graph, LowDegreeNodes::CountAsZero)
}

pub fn clustering_coefficient_with(graph: &AttributedGraph, low: LowDegreeNodes) -> f64 {
    let n = graph.node_count();
    let (mut total, mut counted) = (0.0, 0usize);
    for v in 0..n {
        if graph.adjacent(v).len() < 2 && low == LowDegreeNodes::Exclude {
            continue;
        }
        total += local_clustering(graph, v);
        counted += 1;
    }
    if counted == 0 {
        0.0
    } else {
        total / counted as f64
    }
}

/// Degree assortativity. Errors with [`Error::Undefined`] when there are no
/// edges or every edge end has the same degree.
pub fn assortativity(graph: &AttributedGraph) -> Result<f64> {
    let m2 = 2 * graph.edge_count();
    if m2 == 0 {
        return Err(Error::undefined("assortativity of a graph without edges"));
    }
    let deg = |v: usize| graph.adjacent(v).len() as f64;
    // each node contributes its degree once per incident edge end
    let mean = (0..graph.node_count()).map(|v| deg(v) * deg(v)).sum::<f64>() / m2 as f64;
    let (mut var, mut cov) = (0.0, 0.0);
    for u in 0..graph.node_count() {
        let x = deg(u) - mean;
        for &v in graph.adjacent(u) {
            var += x * x;
            cov += x * (deg(v) - mean);
        }
    }
    if var <= 1e-12 * m2 as f64 {
        return Err(Error::undefined("assortativity: zero degree variance over edges"));
    }
    Ok((cov / var).clamp(-1.0, 1.0))
}

/// Global efficiency `1/(N(N−1)) · Σ_{i≠j} 1/dist(i, j)`.
pub fn efficiency(graph: &AttributedGraph) -> Result<f64> {
    let n = graph.node_count();
    if n < 2 {
        return Err(Error::undefined("efficiency needs at least two nodes"));
    }
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    let mut total = 0.0;
    for s in 0..n {
        dist.fill(usize::MAX);
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &u in graph.adjacent(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    total += 1.0 / dist[u] as f64;
                    queue.push_back(u);
                }
            }
        }
    }
    Ok(total / (n * (n - 1)) as f64)
}

pub fn stats_report(graph: &AttributedGraph) -> Result<NetStatsRow> {
    let (largest_component, n_components) = components(graph);
    Ok(NetStatsRow {
        n_nodes: graph.node_count(),
        n_edges: graph.edge_count(),
        n_attributes: graph.attr_dim(),
        largest_component,
        n_components,
        efficiency: efficiency(graph)?,
        clustering: clustering_coefficient(graph),
        assortativity: assortativity(graph).ok(),
        avg_degree: avg_degree(graph)?,
    })
}
