//! Text formats: edge lists, attribute files, id maps and score dumps.
//!
//! Edge list: one `u v` pair per line, `#` starts a comment line.
//!
//! Attributes: the first non-blank line is `#dense m` or `#sparse m`; each
//! following line is a node id and then either `m` reals or `idx:value`
//! tokens. Nodes that do not appear get the zero vector.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use attrwalk_core::graph::{AttributeMatrix, AttributedGraph, BuildSummary, SparseVector};
use attrwalk_core::similarity::SimilarityMatrix;
use attrwalk_core::ScoreMatrix;

use crate::error::{CliError, Result};

/// Whether ids in input files start at 0 or 1.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Indexing {
    #[default]
    Zero,
    One,
}

impl Indexing {
    pub fn offset(self) -> u64 {
        match self {
            Indexing::Zero => 0,
            Indexing::One => 1,
        }
    }

    fn to_dense(self, raw: &str) -> std::result::Result<usize, String> {
        let id: i64 = raw.parse().map_err(|_| format!("`{raw}` is not an integer node id"))?;
        if id < 0 {
            return Err(format!("negative node id {id}"));
        }
        let offset = self.offset() as i64;
        if id < offset {
            return Err(format!("node id {id} below one-based minimum"));
        }
        Ok((id - offset) as usize)
    }
}

impl std::str::FromStr for Indexing {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "zero" | "0" => Ok(Indexing::Zero),
            "one" | "1" => Ok(Indexing::One),
            other => Err(format!("unknown indexing `{other}` (expected zero or one)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeListLoad {
    pub graph: AttributedGraph,
    pub summary: BuildSummary,
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| CliError::io(path, e))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path, e))
}

pub fn load_edge_list(path: &Path, indexing: Indexing) -> Result<EdgeListLoad> {
    read_edge_list(open(path)?, path, indexing)
}

pub fn read_edge_list(reader: impl BufRead, origin: &Path, indexing: Indexing) -> Result<EdgeListLoad> {
    let mut edges = Vec::new();
    let mut n = 0usize;
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| CliError::io(origin, e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |msg: String| CliError::parse(origin, idx + 1, msg);
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(parse_err(format!("expected two node ids, found {} fields", tokens.len())));
        }
        let u = indexing.to_dense(tokens[0]).map_err(parse_err)?;
        let v = indexing.to_dense(tokens[1]).map_err(parse_err)?;
        n = n.max(u + 1).max(v + 1);
        edges.push((u, v));
    }
    let (graph, summary) = AttributedGraph::from_edges(n, edges)?;
    if summary.self_loops > 0 {
        log::warn!("{}: dropped {} self-loop(s)", origin.display(), summary.self_loops);
    }
    if summary.duplicates > 0 {
        log::info!("{}: collapsed {} duplicate edge(s)", origin.display(), summary.duplicates);
    }
    Ok(EdgeListLoad { graph, summary })
}

pub fn write_edge_list(graph: &AttributedGraph, mut out: impl Write, indexing: Indexing) -> std::io::Result<()> {
    let off = indexing.offset() as usize;
    writeln!(out, "# {} nodes, {} edges", graph.node_count(), graph.edge_count())?;
    for (u, v) in graph.edges() {
        writeln!(out, "{} {}", u + off, v + off)?;
    }
    Ok(())
}

pub fn save_edge_list(graph: &AttributedGraph, path: &Path, indexing: Indexing) -> Result<()> {
    let mut w = create(path)?;
    write_edge_list(graph, &mut w, indexing).and_then(|_| w.flush()).map_err(|e| CliError::io(path, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AttrLayout {
    Dense,
    Sparse,
}

/// Reads an attribute file and attaches it to `graph`.
/// Returns the graph and the number of rows holding negative values.
pub fn load_attributes(path: &Path, graph: AttributedGraph, indexing: Indexing) -> Result<(AttributedGraph, usize)> {
    read_attributes(open(path)?, path, graph, indexing)
}

pub fn read_attributes(
    reader: impl BufRead,
    origin: &Path,
    graph: AttributedGraph,
    indexing: Indexing,
) -> Result<(AttributedGraph, usize)> {
    let n = graph.node_count();
    let mut header: Option<(AttrLayout, usize)> = None;
    let mut matrix = AttributeMatrix::zeros(n, 0);
    let mut seen = vec![false; n];
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| CliError::io(origin, e))?;
        let line = line.trim();
        let lineno = idx + 1;
        let parse_err = |msg: String| CliError::parse(origin, lineno, msg);
        if line.is_empty() {
            continue;
        }
        let Some((layout, dim)) = header else {
            let mut parts = line.split_whitespace();
            let layout = match parts.next() {
                Some("#dense") => AttrLayout::Dense,
                Some("#sparse") => AttrLayout::Sparse,
                _ => return Err(parse_err("expected header `#dense m` or `#sparse m`".into())),
            };
            let dim: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| parse_err("header needs a non-negative attribute count".into()))?;
            header = Some((layout, dim));
            matrix = AttributeMatrix::zeros(n, dim);
            continue;
        };
        if line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let node = indexing.to_dense(tokens.next().unwrap()).map_err(parse_err)?;
        if node >= n {
            return Err(parse_err(format!("node {node} not in graph with {n} nodes")));
        }
        if std::mem::replace(&mut seen[node], true) {
            return Err(parse_err(format!("node {node} listed twice")));
        }
        let row = match layout {
            AttrLayout::Dense => {
                let values = tokens
                    .map(|t| t.parse::<f64>().map_err(|_| parse_err(format!("`{t}` is not a number"))))
                    .collect::<Result<Vec<f64>>>()?;
                if values.len() != dim {
                    return Err(parse_err(format!("expected {dim} values, found {}", values.len())));
                }
                SparseVector::from_dense(&values)
            }
            AttrLayout::Sparse => {
                let mut pairs = Vec::new();
                for t in tokens {
                    let (i, v) = t.split_once(':').ok_or_else(|| parse_err(format!("`{t}` is not idx:value")))?;
                    let i: usize = i.parse().map_err(|_| parse_err(format!("bad attribute index in `{t}`")))?;
                    let v: f64 = v.parse().map_err(|_| parse_err(format!("bad attribute value in `{t}`")))?;
                    if i >= dim {
                        return Err(parse_err(format!("attribute index {i} out of range for {dim} attributes")));
                    }
                    pairs.push((i, v));
                }
                SparseVector::from_pairs(dim, pairs)?
            }
        };
        if row.iter().any(|(_, v)| !v.is_finite()) {
            return Err(parse_err("non-finite attribute value".into()));
        }
        matrix.set_row(node, row)?;
    }
    if header.is_none() && n > 0 {
        return Err(CliError::parse(origin, 1, "missing `#dense m` / `#sparse m` header".into()));
    }
    let negative = matrix.negative_rows();
    if negative > 0 {
        log::warn!(
            "{}: {negative} node(s) have negative attributes; negative similarities are clamped to 0",
            origin.display()
        );
    }
    Ok((graph.with_attributes(matrix)?, negative))
}

/// Writes attributes in the sparse layout.
pub fn write_attributes(graph: &AttributedGraph, mut out: impl Write, indexing: Indexing) -> std::io::Result<()> {
    let off = indexing.offset() as usize;
    writeln!(out, "#sparse {}", graph.attr_dim())?;
    for (v, row) in graph.attributes().rows().iter().enumerate() {
        if row.nnz() == 0 {
            continue;
        }
        write!(out, "{}", v + off)?;
        for (i, x) in row.iter() {
            write!(out, " {i}:{x}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn save_attributes(graph: &AttributedGraph, path: &Path, indexing: Indexing) -> Result<()> {
    let mut w = create(path)?;
    write_attributes(graph, &mut w, indexing).and_then(|_| w.flush()).map_err(|e| CliError::io(path, e))
}

/// CSV `original_id,dense_index` for every node.
pub fn save_id_map(n: usize, indexing: Indexing, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    let res = (|| {
        writeln!(w, "original_id,dense_index")?;
        for v in 0..n {
            writeln!(w, "{},{v}", v as u64 + indexing.offset())?;
        }
        w.flush()
    })();
    res.map_err(|e| CliError::io(path, e))
}

/// CSV `i,j,score`, one ranked pair per line.
pub fn write_ranking(pairs: &[(usize, usize, f64)], mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "i,j,score")?;
    for (i, j, s) in pairs {
        writeln!(out, "{i},{j},{s}")?;
    }
    Ok(())
}

fn write_matrix(n: usize, get: impl Fn(usize, usize) -> f64, mut out: impl Write) -> std::io::Result<()> {
    for i in 0..n {
        for j in 0..n {
            if j > 0 {
                out.write_all(b",")?;
            }
            write!(out, "{}", get(i, j))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn dump_scores(scores: &ScoreMatrix, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    write_matrix(scores.n(), |i, j| scores.get(i, j), &mut w)
        .and_then(|_| w.flush())
        .map_err(|e| CliError::io(path, e))
}

pub fn dump_similarity(sim: &SimilarityMatrix, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    write_matrix(sim.n(), |i, j| sim.get(i, j), &mut w)
        .and_then(|_| w.flush())
        .map_err(|e| CliError::io(path, e))
}

/// `report` → `report.txt`, `report.jsonl`.
pub fn with_extension(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}
