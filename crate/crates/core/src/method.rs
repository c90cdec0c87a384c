//! Named predictors and a single dispatch point for scoring a graph.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::baselines::{katz_index, local_index, lp_index, BaselineConfig, LocalIndex};
use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::propagation::{randwalk_solve_with, simrank_classic_with, PropagationConfig};
use crate::score::ScoreMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    RandWalk,
    SimRank,
    Local(LocalIndex),
    LocalPath,
    Katz,
}

impl Method {
    /// The attribute-weighted method followed by the ten baselines.
    pub const COMPARISON: [Method; 11] = [
        Method::RandWalk,
        Method::Local(LocalIndex::CommonNeighbors),
        Method::Local(LocalIndex::Salton),
        Method::Local(LocalIndex::Jaccard),
        Method::Local(LocalIndex::Sorensen),
        Method::Local(LocalIndex::HubPromoted),
        Method::Local(LocalIndex::HubDepressed),
        Method::Local(LocalIndex::LeichtHolmeNewman),
        Method::Local(LocalIndex::PreferentialAttachment),
        Method::LocalPath,
        Method::Katz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::RandWalk => "RandWalk",
            Method::SimRank => "SimRank",
            Method::Local(LocalIndex::CommonNeighbors) => "CN",
            Method::Local(LocalIndex::Salton) => "Salton",
            Method::Local(LocalIndex::Jaccard) => "Jaccard",
            Method::Local(LocalIndex::Sorensen) => "Sorensen",
            Method::Local(LocalIndex::HubPromoted) => "HPI",
            Method::Local(LocalIndex::HubDepressed) => "HDI",
            Method::Local(LocalIndex::LeichtHolmeNewman) => "LHN-I",
            Method::Local(LocalIndex::PreferentialAttachment) => "PA",
            Method::LocalPath => "LP",
            Method::Katz => "Katz",
        }
    }

    /// Whether the method reads node attributes.
    pub fn uses_attributes(self) -> bool {
        self == Method::RandWalk
    }

    /// Parses a comma-separated list; `all` expands to [`Method::COMPARISON`].
    /// Order is preserved and repeats are dropped.
    pub fn parse_list(list: &str) -> Result<Vec<Method>> {
        let mut out: Vec<Method> = Vec::new();
        for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let expanded: Vec<Method> = if token.eq_ignore_ascii_case("all") {
                Method::COMPARISON.to_vec()
            } else {
                alloc::vec![token.parse()?]
            };
            for m in expanded {
                if !out.contains(&m) {
                    out.push(m);
                }
            }
        }
        if out.is_empty() {
            return Err(Error::config("no methods requested"));
        }
        Ok(out)
    }

    pub fn valid_names() -> String {
        let mut names: Vec<&str> = Method::COMPARISON.iter().map(|m| m.name()).collect();
        names.push(Method::SimRank.name());
        names.push("all");
        names.join(", ")
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let m = match key.as_str() {
            "randwalk" | "rw" => Method::RandWalk,
            "simrank" => Method::SimRank,
            "cn" => Method::Local(LocalIndex::CommonNeighbors),
            "salton" => Method::Local(LocalIndex::Salton),
            "jaccard" => Method::Local(LocalIndex::Jaccard),
            "sorensen" | "sorenson" => Method::Local(LocalIndex::Sorensen),
            "hpi" => Method::Local(LocalIndex::HubPromoted),
            "hdi" => Method::Local(LocalIndex::HubDepressed),
            "lhn-i" | "lhni" | "lhn" => Method::Local(LocalIndex::LeichtHolmeNewman),
            "pa" => Method::Local(LocalIndex::PreferentialAttachment),
            "lp" => Method::LocalPath,
            "katz" | "kaze" => Method::Katz,
            _ => {
                return Err(Error::config(format!(
                    "unknown method `{s}`; valid names: {}",
                    Method::valid_names()
                )))
            }
        };
        Ok(m)
    }
}

/// Scores every node pair of `graph` with `method`. `observer` receives
/// `(sweep, delta)` from the iterative methods.
pub fn score_with(
    method: Method,
    graph: &AttributedGraph,
    propagation: &PropagationConfig,
    baseline: &BaselineConfig,
    observer: impl FnMut(usize, f64),
) -> Result<ScoreMatrix> {
    match method {
        Method::RandWalk => randwalk_solve_with(graph, propagation, observer),
        Method::SimRank => simrank_classic_with(graph, propagation, observer),
        Method::Local(kind) => Ok(local_index(kind, graph)),
        Method::LocalPath => lp_index(graph, baseline),
        Method::Katz => katz_index(graph, baseline),
    }
}

pub fn score(
    method: Method,
    graph: &AttributedGraph,
    propagation: &PropagationConfig,
    baseline: &BaselineConfig,
) -> Result<ScoreMatrix> {
    score_with(method, graph, propagation, baseline, |_, _| {})
}
