//! The `predict`, `evaluate`, `stats` and `generate` subcommands.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use attrwalk_core::generate::{generate_planted_attribute_graph, PlantedConfig};
use attrwalk_core::method::{score_with, Method};
use attrwalk_core::netstats::{stats_report, NetStatsRow};
use attrwalk_core::similarity::similarity_matrix;
use attrwalk_core::AttributedGraph;

use crate::error::{CliError, Result};
use crate::experiment::{run_experiment, EvalReport, ExperimentConfig};
use crate::formats::{
    dump_scores, dump_similarity, load_attributes, load_edge_list, save_attributes, save_edge_list, save_id_map,
    with_extension, write_ranking, Indexing,
};

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub edges: Option<PathBuf>,
    pub attrs: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub indexing: Indexing,
    pub methods: Vec<Method>,
    pub experiment: ExperimentConfig,
    pub top_k: usize,
    pub dataset: Option<String>,
    pub dump_sim: Option<PathBuf>,
    pub dump_scores: Option<PathBuf>,
    pub id_map: Option<PathBuf>,
    pub planted: PlantedConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            edges: None,
            attrs: None,
            out: None,
            indexing: Indexing::Zero,
            methods: vec![Method::RandWalk],
            experiment: ExperimentConfig::default(),
            top_k: 100,
            dataset: None,
            dump_sim: None,
            dump_scores: None,
            id_map: None,
            planted: PlantedConfig::default(),
        }
    }
}

/// Whether every iterative solver reached its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outcome {
    pub converged: bool,
}

impl RunConfig {
    fn dataset_name(&self) -> String {
        self.dataset.clone().unwrap_or_else(|| {
            self.edges
                .as_deref()
                .and_then(Path::file_stem)
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "graph".into())
        })
    }
}

fn load_graph(cfg: &RunConfig, need_attributes: bool) -> Result<AttributedGraph> {
    let edges = cfg.edges.as_deref().ok_or_else(|| CliError::config("--edges is required"))?;
    let graph = load_edge_list(edges, cfg.indexing)?.graph;
    match &cfg.attrs {
        Some(path) => Ok(load_attributes(path, graph, cfg.indexing)?.0),
        None if need_attributes => Err(CliError::config("RandWalk needs node attributes: pass --attrs")),
        None => Ok(graph),
    }
}

fn write_output(out: Option<&Path>, body: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, body).map_err(|e| CliError::io(path, e)),
        None => std::io::stdout().write_all(body).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

fn progress(method: Method) -> impl FnMut(usize, f64) {
    move |sweep, delta| log::info!("{method} sweep {sweep}: delta {delta:.3e}")
}

/// Scores the full graph with one method and writes the top-K non-edges as
/// CSV `i,j,score`, ties broken by `(i, j)`.
pub fn cmd_predict(cfg: &RunConfig) -> Result<Outcome> {
    let method = match cfg.methods.as_slice() {
        [m] => *m,
        _ => return Err(CliError::config("predict takes exactly one --method")),
    };
    let graph = load_graph(cfg, method.uses_attributes())?;
    if let Some(path) = &cfg.id_map {
        save_id_map(graph.node_count(), cfg.indexing, path)?;
    }
    if let Some(path) = &cfg.dump_sim {
        if graph.attr_dim() == 0 {
            return Err(CliError::config("--dump-sim needs --attrs"));
        }
        dump_similarity(&similarity_matrix(&graph, cfg.experiment.propagation.similarity), path)?;
    }
    let p = &cfg.experiment;
    let scores = score_with(method, &graph, &p.propagation, &p.baseline, progress(method))?;
    if !scores.converged {
        log::warn!(
            "{method} did not converge in {} sweeps (last delta {:.3e}); writing results anyway",
            scores.iterations,
            scores.final_delta
        );
    }
    if let Some(path) = &cfg.dump_scores {
        dump_scores(&scores, path)?;
    }
    let ranking = scores.top_non_edges(&graph, cfg.top_k);
    let mut body = Vec::new();
    write_ranking(&ranking, &mut body).expect("writing to memory");
    write_output(cfg.out.as_deref(), &body)?;
    Ok(Outcome { converged: scores.converged })
}

/// Runs the comparison and writes `<out>.txt` (table) and `<out>.jsonl`
/// (records), or prints the table when no `--out` is given.
pub fn cmd_evaluate(cfg: &RunConfig) -> Result<(EvalReport, Outcome)> {
    let needs_attrs = cfg.methods.iter().any(|m| m.uses_attributes());
    let graph = load_graph(cfg, needs_attrs)?;
    let report = run_experiment(&cfg.dataset_name(), &graph, &cfg.methods, &cfg.experiment)?;
    match &cfg.out {
        Some(prefix) => {
            write_output(Some(&with_extension(prefix, "txt")), report.to_table().as_bytes())?;
            write_output(Some(&with_extension(prefix, "jsonl")), report.to_jsonl().as_bytes())?;
        }
        None => write_output(None, report.to_table().as_bytes())?,
    }
    let outcome = Outcome { converged: report.all_converged() };
    Ok((report, outcome))
}

pub fn stats_table(name: &str, row: &NetStatsRow) -> String {
    let r = row.assortativity.map_or_else(|| "n/a".to_string(), |r| format!("{r:.4}"));
    let mut out = format!(
        "{:<12} {:>7} {:>7} {:>6} {:>12} {:>8} {:>8} {:>8} {:>8}\n",
        "Networks", "N", "M", "Att", "NUM_C", "e", "C", "r", "K"
    );
    out.push_str(&format!(
        "{:<12} {:>7} {:>7} {:>6} {:>12} {:>8.4} {:>8.4} {:>8} {:>8.4}\n",
        name,
        row.n_nodes,
        row.n_edges,
        row.n_attributes,
        row.num_c(),
        row.efficiency,
        row.clustering,
        r,
        row.avg_degree
    ));
    if row.assortativity.is_none() {
        out.push_str("# r is undefined: every edge joins nodes of equal degree (zero variance)\n");
    }
    out
}

pub fn cmd_stats(cfg: &RunConfig) -> Result<NetStatsRow> {
    let graph = load_graph(cfg, false)?;
    let row = stats_report(&graph)?;
    write_output(cfg.out.as_deref(), stats_table(&cfg.dataset_name(), &row).as_bytes())?;
    Ok(row)
}

/// Writes a planted-partition graph to `--edges` and its attributes to `--attrs`.
pub fn cmd_generate(cfg: &RunConfig) -> Result<AttributedGraph> {
    let edges = cfg.edges.as_deref().ok_or_else(|| CliError::config("generate needs --edges <output path>"))?;
    let attrs = cfg.attrs.as_deref().ok_or_else(|| CliError::config("generate needs --attrs <output path>"))?;
    let planted = generate_planted_attribute_graph(&cfg.planted)?;
    save_edge_list(&planted.graph, edges, cfg.indexing)?;
    save_attributes(&planted.graph, attrs, cfg.indexing)?;
    log::info!(
        "generated {} nodes, {} edges, {} attributes",
        planted.graph.node_count(),
        planted.graph.edge_count(),
        planted.graph.attr_dim()
    );
    Ok(planted.graph)
}
