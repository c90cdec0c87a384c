//! Classic neighbourhood and path-count link predictors.
//!
//! With `z = |Γ(x) ∩ Γ(y)|` and `k_x` the degree of `x`:
//!
//! | index    | score                   |
//! |----------|-------------------------|
//! | CN       | `z`                     |
//! | Salton   | `z / √(k_x·k_y)`        |
//! | Jaccard  | `z / |Γ(x) ∪ Γ(y)|`     |
//! | Sørensen | `2z / (k_x + k_y)`      |
//! | HPI      | `z / min(k_x, k_y)`     |
//! | HDI      | `z / max(k_x, k_y)`     |
//! | LHN-I    | `z / (k_x·k_y)`         |
//! | PA       | `k_x·k_y`               |
//!
//! plus the local path index `A² + ε·A³` and Katz `Σ_{l≥1} β^l A^l`.
//! Diagonals are left at 0; a zero denominator scores 0.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::score::ScoreMatrix;

/// Katz series terms are added until the remainder bound falls below this.
const KATZ_TRUNCATION: f64 = 1e-15;
const KATZ_MAX_TERMS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocalIndex {
    CommonNeighbors,
    Salton,
    Jaccard,
    Sorensen,
    HubPromoted,
    HubDepressed,
    LeichtHolmeNewman,
    PreferentialAttachment,
}

impl LocalIndex {
    pub const ALL: [LocalIndex; 8] = [
        LocalIndex::CommonNeighbors,
        LocalIndex::Salton,
        LocalIndex::Jaccard,
        LocalIndex::Sorensen,
        LocalIndex::HubPromoted,
        LocalIndex::HubDepressed,
        LocalIndex::LeichtHolmeNewman,
        LocalIndex::PreferentialAttachment,
    ];

    /// Score from the common-neighbour count `z`, degrees, and union size.
    #[inline]
    pub fn score(self, z: usize, kx: usize, ky: usize) -> f64 {
        let (z, x, y) = (z as f64, kx as f64, ky as f64);
        let ratio = |num: f64, den: f64| if den > 0.0 { num / den } else { 0.0 };
        match self {
            LocalIndex::CommonNeighbors => z,
            LocalIndex::Salton => ratio(z, libm::sqrt(x * y)),
            LocalIndex::Jaccard => ratio(z, x + y - z),
            LocalIndex::Sorensen => ratio(2.0 * z, x + y),
            LocalIndex::HubPromoted => ratio(z, x.min(y)),
            LocalIndex::HubDepressed => ratio(z, x.max(y)),
            LocalIndex::LeichtHolmeNewman => ratio(z, x * y),
            LocalIndex::PreferentialAttachment => x * y,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineConfig {
    /// Weight of the three-hop term in the local path index.
    pub lp_epsilon: f64,
    /// Katz damping; must stay below `1 / λ_max(A)`.
    pub katz_beta: f64,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        Self { lp_epsilon: 0.001, katz_beta: 0.001 }
    }
}

impl BaselineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.lp_epsilon.is_nan() || self.lp_epsilon <= 0.0 {
            return Err(Error::config(format!("lp_epsilon must be positive, got {}", self.lp_epsilon)));
        }
        if self.katz_beta.is_nan() || self.katz_beta <= 0.0 {
            return Err(Error::config(format!("katz_beta must be positive, got {}", self.katz_beta)));
        }
        Ok(())
    }
}

pub fn local_index(kind: LocalIndex, graph: &AttributedGraph) -> ScoreMatrix {
    let n = graph.node_count();
    let mut out = ScoreMatrix::zeros(n);
    let mut common = vec![0usize; n];
    for a in 0..n {
        for &x in graph.adjacent(a) {
            for &b in graph.adjacent(x) {
                if b > a {
                    common[b] += 1;
                }
            }
        }
        let ka = graph.adjacent(a).len();
        for (b, slot) in common.iter_mut().enumerate().skip(a + 1) {
            let z = core::mem::take(slot);
            if z == 0 && kind != LocalIndex::PreferentialAttachment {
                continue;
            }
            out.set_sym(a, b, kind.score(z, ka, graph.adjacent(b).len()));
        }
    }
    out
}

/// Dense `A²`, with the diagonal holding degrees.
fn paths_of_two(graph: &AttributedGraph) -> Vec<f64> {
    let n = graph.node_count();
    let mut sq = vec![0.0; n * n];
    for a in 0..n {
        let row = &mut sq[a * n..(a + 1) * n];
        for &x in graph.adjacent(a) {
            for &b in graph.adjacent(x) {
                row[b] += 1.0;
            }
        }
    }
    sq
}

/// Local path index `(A²)_xy + ε·(A³)_xy`.
pub fn lp_index(graph: &AttributedGraph, cfg: &BaselineConfig) -> Result<ScoreMatrix> {
    cfg.validate()?;
    let n = graph.node_count();
    let sq = paths_of_two(graph);
    let mut out = ScoreMatrix::zeros(n);
    let mut cube_row = vec![0.0; n];
    for a in 0..n {
        cube_row.fill(0.0);
        for &x in graph.adjacent(a) {
            for (acc, v) in cube_row.iter_mut().zip(&sq[x * n..(x + 1) * n]) {
                *acc += v;
            }
        }
        for b in a + 1..n {
            out.set_sym(a, b, sq[a * n + b] + cfg.lp_epsilon * cube_row[b]);
        }
    }
    Ok(out)
}

/// Lower and upper bounds on the spectral radius of the adjacency matrix.
///
/// Power iteration on `A + I` from the all-ones vector keeps the iterate
/// strictly positive, so the Rayleigh quotient bounds `λ_max` from below and
/// the Collatz–Wielandt ratio `max_i (Ax)_i / x_i` bounds it from above.
pub fn spectral_radius_bounds(graph: &AttributedGraph) -> (f64, f64) {
    let n = graph.node_count();
    if graph.edge_count() == 0 {
        return (0.0, 0.0);
    }
    let mut x = vec![1.0; n];
    let mut ax = vec![0.0; n];
    let (mut lower, mut upper) = (0.0, f64::INFINITY);
    for _ in 0..5000 {
        for (v, slot) in ax.iter_mut().enumerate() {
            *slot = graph.adjacent(v).iter().map(|&u| x[u]).sum();
        }
        let num: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let den: f64 = x.iter().map(|a| a * a).sum();
        lower = f64::max(lower, num / den);
        let cw = x.iter().zip(&ax).map(|(xi, axi)| axi / xi).fold(0.0, f64::max);
        upper = f64::min(upper, cw);
        if upper - lower <= 1e-10 * upper {
            break;
        }
        let mut norm = 0.0f64;
        for v in 0..n {
            x[v] += ax[v];
            norm = norm.max(x[v]);
        }
        for xi in &mut x {
            *xi /= norm;
        }
    }
    (lower, upper)
}

/// Katz index `Σ_{l≥1} β^l (A^l)_xy`.
///
/// Terms are accumulated until the tail bound `(βρ)^{L+1} / (1 − βρ)`, with
/// `ρ` an upper bound on the spectral radius, drops below 1e-15. Errors when
/// `β·ρ ≥ 1`.
pub fn katz_index(graph: &AttributedGraph, cfg: &BaselineConfig) -> Result<ScoreMatrix> {
    cfg.validate()?;
    let n = graph.node_count();
    let beta = cfg.katz_beta;
    let (_, rho) = spectral_radius_bounds(graph);
    let q = beta * rho;
    if q >= 1.0 {
        return Err(Error::config(format!(
            "katz_beta = {beta} diverges: it must be below 1/λ_max ≈ {:.6} (λ_max ≤ {rho:.6})",
            1.0 / rho
        )));
    }
    let mut total = vec![0.0; n * n];
    if graph.edge_count() == 0 {
        return Ok(ScoreMatrix::from_row_major(n, total));
    }
    // term_1 = βA
    let mut term = vec![0.0; n * n];
    for a in 0..n {
        for &b in graph.adjacent(a) {
            term[a * n + b] = beta;
        }
    }
    let mut next = vec![0.0; n * n];
    let mut tail = q;
    let mut terms = 1;
    loop {
        for (t, v) in total.iter_mut().zip(&term) {
            *t += v;
        }
        tail *= q;
        if tail / (1.0 - q) < KATZ_TRUNCATION || terms >= KATZ_MAX_TERMS {
            break;
        }
        // term_{l+1} = βA · term_l
        for a in 0..n {
            let row = &mut next[a * n..(a + 1) * n];
            row.fill(0.0);
            for &x in graph.adjacent(a) {
                for (acc, v) in row.iter_mut().zip(&term[x * n..(x + 1) * n]) {
                    *acc += v;
                }
            }
            for v in row.iter_mut() {
                *v *= beta;
            }
        }
        core::mem::swap(&mut term, &mut next);
        terms += 1;
    }
    let mut out = ScoreMatrix::zeros(n);
    for a in 0..n {
        for b in a + 1..n {
            out.set_sym(a, b, 0.5 * (total[a * n + b] + total[b * n + a]));
        }
    }
    Ok(out)
}
