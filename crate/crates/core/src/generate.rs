//! Planted-partition graphs whose attributes follow the communities.

use alloc::format;
use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{AttributeMatrix, AttributedGraph, SparseVector};
use crate::seed::{derive_seed, rng_from_seed, Stream};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantedConfig {
    pub n: usize,
    pub k_groups: usize,
    pub p_in: f64,
    pub p_out: f64,
    /// Total attribute mass moved onto coordinates outside a node's own block.
    pub attr_noise: f64,
    pub seed: u64,
    /// Width of each group's keyword block; `attr_dim = k_groups · attrs_per_group`.
    pub attrs_per_group: usize,
    /// How many foreign coordinates share the noise mass.
    pub noise_coords: usize,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        Self {
            n: 200,
            k_groups: 4,
            p_in: 0.15,
            p_out: 0.01,
            attr_noise: 0.1,
            seed: crate::seed::DEFAULT_SEED,
            attrs_per_group: 5,
            noise_coords: 3,
        }
    }
}

impl PlantedConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0 <= self.p_out && self.p_out < self.p_in && self.p_in <= 1.0) {
            return Err(Error::config(format!(
                "need 0 <= p_out < p_in <= 1, got p_in = {}, p_out = {}",
                self.p_in, self.p_out
            )));
        }
        if self.k_groups == 0 || self.n < self.k_groups {
            return Err(Error::config(format!("cannot split {} nodes into {} groups", self.n, self.k_groups)));
        }
        if self.attrs_per_group == 0 {
            return Err(Error::config("attrs_per_group must be positive"));
        }
        if !(self.attr_noise >= 0.0 && self.attr_noise.is_finite()) {
            return Err(Error::config(format!("attr_noise must be non-negative, got {}", self.attr_noise)));
        }
        let foreign = self.attr_dim() - self.attrs_per_group;
        if self.attr_noise > 0.0 && (self.noise_coords == 0 || foreign == 0) {
            return Err(Error::config("attribute noise needs at least two groups and noise_coords > 0"));
        }
        Ok(())
    }

    pub fn attr_dim(&self) -> usize {
        self.k_groups * self.attrs_per_group
    }

    /// Groups are contiguous, balanced blocks of node ids.
    pub fn group_of(&self, v: usize) -> usize {
        v * self.k_groups / self.n
    }

    /// Mean and variance of the edge count.
    pub fn edge_count_moments(&self) -> (f64, f64) {
        let mut sizes = alloc::vec![0usize; self.k_groups];
        for v in 0..self.n {
            sizes[self.group_of(v)] += 1;
        }
        let within: f64 = sizes.iter().map(|&g| (g * g.saturating_sub(1) / 2) as f64).sum();
        let all = (self.n * (self.n - 1) / 2) as f64;
        let across = all - within;
        let mean = within * self.p_in + across * self.p_out;
        let var = within * self.p_in * (1.0 - self.p_in) + across * self.p_out * (1.0 - self.p_out);
        (mean, var)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedGraph {
    pub graph: AttributedGraph,
    pub groups: Vec<usize>,
}

/// Samples a planted-partition graph. Each group owns a block of
/// `attrs_per_group` keyword coordinates carrying total mass 1; every node
/// additionally spreads `attr_noise` evenly over `noise_coords` coordinates
/// drawn from outside its block. Deterministic per seed.
pub fn generate_planted_attribute_graph(cfg: &PlantedConfig) -> Result<PlantedGraph> {
    cfg.validate()?;
    let mut rng = rng_from_seed(derive_seed(cfg.seed, Stream::Generate, 0));
    let groups: Vec<usize> = (0..cfg.n).map(|v| cfg.group_of(v)).collect();

    let mut edges = Vec::new();
    for u in 0..cfg.n {
        for v in u + 1..cfg.n {
            let p = if groups[u] == groups[v] { cfg.p_in } else { cfg.p_out };
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }

    let dim = cfg.attr_dim();
    let width = cfg.attrs_per_group;
    let foreign = dim - width;
    let mut rows = Vec::with_capacity(cfg.n);
    for &g in &groups {
        let block = g * width;
        let mut pairs: Vec<(usize, f64)> = (block..block + width).map(|i| (i, 1.0 / width as f64)).collect();
        if cfg.attr_noise > 0.0 {
            let k = cfg.noise_coords.min(foreign);
            let share = cfg.attr_noise / k as f64;
            for idx in sample(&mut rng, foreign, k).into_iter() {
                // skip over the node's own block
                let coord = if idx < block { idx } else { idx + width };
                pairs.push((coord, share));
            }
        }
        rows.push(SparseVector::from_pairs(dim, pairs)?);
    }

    let (graph, _) = AttributedGraph::from_edges(cfg.n, edges)?;
    let graph = graph.with_attributes(AttributeMatrix::new(dim, rows)?)?;
    Ok(PlantedGraph { graph, groups })
}
