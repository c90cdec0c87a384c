//! Link prediction on graphs whose nodes carry attribute vectors.
//!
//! The central method propagates pairwise link scores along edges the way
//! SimRank does, but every edge is weighted by the cosine similarity of its
//! endpoints' attributes. Alongside it live classic SimRank, ten classic
//! neighbourhood and path baselines, AUC evaluation on held-out probe edges,
//! the usual network statistics, and a planted-partition generator for
//! synthetic attributed graphs.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, timing and the
//! command-line front end live in the `attrwalk` crate.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod baselines;
pub mod error;
pub mod evaluation;
pub mod generate;
pub mod graph;
pub mod method;
pub mod netstats;
pub mod propagation;
pub mod score;
pub mod seed;
pub mod similarity;

pub use error::{Error, Result};
pub use graph::{AttributeMatrix, AttributedGraph, BuildSummary, SparseVector};
pub use score::ScoreMatrix;
