//! Reading and writing edge-list files in the common SNAP text layout, plus
//! the dataset profile that seeds a generator run.
//!
//! A file is `#`-prefixed comment lines followed by one whitespace-separated
//! integer pair per line. Ingestion tolerates Windows line endings and blank
//! lines, drops self-loops, and collapses duplicate/reversed pairs, counting
//! both. When a comment declares `Nodes: N` and every id already lies in
//! `0..N`, ids are kept verbatim (so trailing or interior isolated nodes
//! survive a round trip); otherwise ids are remapped densely in first-seen
//! order.

use crate::error::Error;
use crate::generate::GenParams;
use crate::graph::Graph;
use crate::metrics;
use crate::Result;
use hashbrown::{HashMap, HashSet};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, BufWriter, Write};
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    /// Original file id for each dense node id.
    pub original_ids: Vec<u64>,
    /// Node count declared in the header comments, when present.
    pub declared_nodes: Option<usize>,
    pub self_loops: u64,
    pub duplicate_edges: u64,
}

/// Pulls `Nodes: <N>` out of a comment line, if present.
fn declared_nodes_hint(comment: &str) -> Option<usize> {
    let mut tokens = comment.split_whitespace();
    while let Some(tok) = tokens.next() {
        if tok.eq_ignore_ascii_case("nodes:") {
            return tokens.next().and_then(|t| t.parse().ok());
        }
    }
    None
}

pub fn parse_snap_edgelist<R: BufRead>(reader: R) -> Result<ParsedGraph> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(u64, u64)> = Vec::new();
    let mut seen: HashSet<(u64, u64)> = HashSet::new();
    let mut self_loops = 0u64;
    let mut duplicate_edges = 0u64;
    let mut max_id = 0u64;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.trim_end_matches(['\r', '\n']);
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if declared.is_none() {
                declared = declared_nodes_hint(comment);
            }
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    reason: format!(
                        "expected exactly 2 integer fields, got {:?}",
                        trimmed
                    ),
                })
            }
        };
        let parse_id = |tok: &str| -> Result<u64> {
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                reason: format!("invalid node id {tok:?}"),
            })
        };
        let (a, b) = (parse_id(a)?, parse_id(b)?);
        if a == b {
            self_loops += 1;
            continue;
        }
        if !seen.insert((a.min(b), a.max(b))) {
            duplicate_edges += 1;
            continue;
        }
        max_id = max_id.max(a.max(b));
        // Original orientation is kept so the dense remap follows the order
        // ids first appear in the file.
        edges.push((a, b));
    }

    // Identity mapping keeps declared isolated nodes; the dense remap is the
    // fallback for files with sparse id spaces.
    let identity = declared.is_some_and(|n| (n as u64) > max_id || edges.is_empty());
    let (graph, original_ids) = if identity {
        let n = declared.unwrap();
        if n > u32::MAX as usize {
            return Err(Error::InvalidParameter(format!(
                "declared node count {n} exceeds u32 id space"
            )));
        }
        let mut g = Graph::new(n);
        for &(a, b) in &edges {
            g.add_edge(a as u32, b as u32)?;
        }
        (g, (0..n as u64).collect())
    } else {
        let mut map: HashMap<u64, u32> = HashMap::new();
        let mut original_ids: Vec<u64> = Vec::new();
        let mut dense = |id: u64, original_ids: &mut Vec<u64>| -> u32 {
            *map.entry(id).or_insert_with(|| {
                original_ids.push(id);
                (original_ids.len() - 1) as u32
            })
        };
        let mapped: Vec<(u32, u32)> = edges
            .iter()
            .map(|&(a, b)| (dense(a, &mut original_ids), dense(b, &mut original_ids)))
            .collect();
        let mut g = Graph::new(original_ids.len());
        for (a, b) in mapped {
            g.add_edge(a, b)?;
        }
        (g, original_ids)
    };

    Ok(ParsedGraph {
        graph,
        original_ids,
        declared_nodes: declared,
        self_loops,
        duplicate_edges,
    })
}

/// Writes the canonical form: name and size header, optional extra comment
/// lines, then `u<TAB>v` pairs sorted ascending. Output is byte-stable for a
/// given graph.
pub fn write_snap_edgelist<W: Write>(
    mut out: W,
    g: &Graph,
    name: &str,
    extra_comments: &[String],
) -> std::io::Result<()> {
    writeln!(out, "# {name}")?;
    writeln!(out, "# Nodes: {} Edges: {}", g.node_count(), g.edge_count())?;
    for line in extra_comments {
        writeln!(out, "# {line}")?;
    }
    for (u, v) in g.sorted_edges() {
        writeln!(out, "{u}\t{v}")?;
    }
    Ok(())
}

pub fn load_graph(path: &Path) -> Result<ParsedGraph> {
    let file = std::fs::File::open(path)?;
    parse_snap_edgelist(std::io::BufReader::new(file))
}

pub fn save_graph(path: &Path, g: &Graph, name: &str, extra_comments: &[String]) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut out = BufWriter::new(file);
    write_snap_edgelist(&mut out, g, name, extra_comments)?;
    out.flush()?;
    Ok(())
}

/// Everything a generator needs to imitate a measured network.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DatasetProfile {
    pub schema_version: u32,
    pub name: String,
    pub nodes: usize,
    pub edges: usize,
    /// Global clustering coefficient of the source network.
    pub cg_real: f64,
    /// Average local clustering coefficient, for reference.
    pub avg_cc_real: f64,
    /// Bridge count of the source network; budgets siege's second phase.
    pub eb_count: u64,
    pub triangle_total: u64,
    /// Degree sequence sorted descending.
    pub degree_sequence: Vec<u32>,
}

impl DatasetProfile {
    pub fn from_json_str(s: &str) -> Result<DatasetProfile> {
        let p: DatasetProfile = serde_json::from_str(s)?;
        if p.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaMismatch {
                expected: SCHEMA_VERSION,
                found: p.schema_version,
            });
        }
        Ok(p)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: &Path) -> Result<DatasetProfile> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json_string()?)?;
        Ok(())
    }

    /// Generator parameters that target this profile.
    pub fn to_gen_params(&self, step: u64) -> GenParams {
        GenParams {
            degrees: self.degree_sequence.clone(),
            cc_target: self.cg_real,
            step,
            eb_count: Some(self.eb_count),
        }
    }
}

/// Measures the structural quantities a generator run needs.
pub fn profile_graph(g: &Graph, name: &str) -> DatasetProfile {
    let triangle_total = metrics::triangle_total(g);
    let triple_total = metrics::triple_total(g);
    let mut degree_sequence = g.degrees();
    degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
    DatasetProfile {
        schema_version: SCHEMA_VERSION,
        name: name.to_string(),
        nodes: g.node_count(),
        edges: g.edge_count(),
        cg_real: if triple_total == 0 {
            0.0
        } else {
            3.0 * triangle_total as f64 / triple_total as f64
        },
        avg_cc_real: metrics::avg_cc(g),
        eb_count: metrics::bridge_count(g),
        triangle_total,
        degree_sequence,
    }
}
