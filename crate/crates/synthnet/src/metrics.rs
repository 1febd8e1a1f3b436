//! Structural metrics for comparing synthetic networks against real ones:
//! clustering (local, average, global), degree and hop-length histograms,
//! k-core decomposition, and bridge counting.

use crate::error::Error;
use crate::graph::{Graph, NodeId};
use crate::Result;
use rand::Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};
use std::io::Write;
use std::path::{Path, PathBuf};

pub const SCHEMA_VERSION: u32 = 1;

/// Per-node triangle counts by degree-ordered forward intersection. Nodes
/// are ranked by ascending degree; every triangle is found exactly once from
/// its two lowest-ranked vertices, in O(m^1.5) overall.
pub fn triangle_counts(g: &Graph) -> Vec<u64> {
    let n = g.node_count();
    let adj = g.adjacency();
    let mut order: Vec<NodeId> = (0..n as u32).collect();
    order.sort_unstable_by_key(|&v| (adj[v as usize].len(), v));
    let mut rank = vec![0u32; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v as usize] = r as u32;
    }
    // Forward lists: neighbors of higher rank, sorted by rank so the
    // intersections below are two-pointer scans.
    let mut fwd: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for v in 0..n {
        let rv = rank[v];
        let mut list: Vec<NodeId> = adj[v]
            .iter()
            .copied()
            .filter(|&w| rank[w as usize] > rv)
            .collect();
        list.sort_unstable_by_key(|&w| rank[w as usize]);
        fwd[v] = list;
    }
    let mut tri = vec![0u64; n];
    for u in 0..n {
        for vi in 0..fwd[u].len() {
            let v = fwd[u][vi] as usize;
            // Common higher-ranked neighbors of u and v close triangles.
            // Entries of fwd[u] before position vi rank below v and cannot
            // appear in fwd[v], so start just past it.
            let (mut i, mut j) = (vi + 1, 0usize);
            while i < fwd[u].len() && j < fwd[v].len() {
                let (a, b) = (fwd[u][i], fwd[v][j]);
                let (ra, rb) = (rank[a as usize], rank[b as usize]);
                match ra.cmp(&rb) {
                    std::cmp::Ordering::Equal => {
                        tri[u] += 1;
                        tri[v] += 1;
                        tri[a as usize] += 1;
                        i += 1;
                        j += 1;
                    }
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                }
            }
        }
    }
    tri
}

/// Triangles through a single node, for spot checks; the bulk path is
/// [`triangle_counts`].
pub fn triangles_at(g: &Graph, v: NodeId) -> Result<u64> {
    let nbrs = g.neighbors(v)?;
    let mut count = 0u64;
    for &u in nbrs {
        for &w in g.neighbors(u)? {
            if w > u && g.contains(v, w) && w != v {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Connected triples centered at `v`: `C(d(v), 2)`.
pub fn triples_at(g: &Graph, v: NodeId) -> Result<u64> {
    let d = g.degree(v)? as u64;
    Ok(if d < 2 { 0 } else { d * (d - 1) / 2 })
}

/// Fraction of `v`'s neighbor pairs that are themselves adjacent; zero by
/// convention for degree < 2.
pub fn local_cc(g: &Graph, v: NodeId) -> Result<f64> {
    let triples = triples_at(g, v)?;
    if triples == 0 {
        return Ok(0.0);
    }
    Ok(triangles_at(g, v)? as f64 / triples as f64)
}

/// Total distinct triangles in the graph.
pub fn triangle_total(g: &Graph) -> u64 {
    let sum: u64 = triangle_counts(g).iter().sum();
    debug_assert_eq!(sum % 3, 0);
    sum / 3
}

/// Total connected triples: `sum(C(d, 2))` over all nodes.
pub fn triple_total(g: &Graph) -> u64 {
    g.adjacency()
        .iter()
        .map(|a| {
            let d = a.len() as u64;
            if d < 2 {
                0
            } else {
                d * (d - 1) / 2
            }
        })
        .sum()
}

/// Mean of local clustering coefficients over *all* nodes; degree < 2
/// contributes zero.
pub fn avg_cc(g: &Graph) -> f64 {
    let n = g.node_count();
    if n == 0 {
        return 0.0;
    }
    let tri = triangle_counts(g);
    let mut sum = 0.0f64;
    for (v, adjv) in g.adjacency().iter().enumerate() {
        let d = adjv.len() as u64;
        if d >= 2 {
            sum += tri[v] as f64 / ((d * (d - 1) / 2) as f64);
        }
    }
    sum / n as f64
}

/// Global (transitivity) clustering coefficient: `3 * triangles / triples`.
/// Zero for graphs with no connected triples.
pub fn global_cc(g: &Graph) -> f64 {
    let triples = triple_total(g);
    if triples == 0 {
        return 0.0;
    }
    3.0 * triangle_total(g) as f64 / triples as f64
}

pub fn degree_histogram(g: &Graph) -> BTreeMap<u32, u64> {
    let mut hist = BTreeMap::new();
    for adjv in g.adjacency() {
        *hist.entry(adjv.len() as u32).or_insert(0u64) += 1;
    }
    hist
}

/// k-core decomposition by bucket peeling (linear in nodes + edges).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoreDecomposition {
    /// Core number per node.
    pub core: Vec<u32>,
    pub max_core: u32,
    /// k -> how many nodes have core number >= k, for k in 1..=max_core.
    pub nodes_in_core: BTreeMap<u32, u64>,
    /// k -> how many edges have both endpoints with core number >= k.
    pub edges_in_core: BTreeMap<u32, u64>,
}

pub fn kcore_decomposition(g: &Graph) -> CoreDecomposition {
    let n = g.node_count();
    let adj = g.adjacency();
    let mut deg: Vec<u32> = adj.iter().map(|a| a.len() as u32).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0) as usize;

    // Counting-sort nodes by degree; `bin[d]` is the start of degree-d nodes.
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin[d as usize + 1] += 1;
    }
    for i in 1..bin.len() {
        bin[i] += bin[i - 1];
    }
    let mut bin_start = bin[..max_deg + 1].to_vec();
    let mut vert = vec![0u32; n];
    let mut pos = vec![0usize; n];
    {
        let mut cursor = bin_start.clone();
        for v in 0..n {
            let d = deg[v] as usize;
            pos[v] = cursor[d];
            vert[pos[v]] = v as u32;
            cursor[d] += 1;
        }
    }

    for i in 0..n {
        let v = vert[i] as usize;
        for &u in &adj[v] {
            let u = u as usize;
            if deg[u] > deg[v] {
                // Swap u to the front of its bucket, then shrink the bucket.
                let du = deg[u] as usize;
                let pu = pos[u];
                let pw = bin_start[du];
                let w = vert[pw] as usize;
                if u != w {
                    vert[pu] = w as u32;
                    vert[pw] = u as u32;
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin_start[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    let core = deg;
    let max_core = core.iter().copied().max().unwrap_or(0);

    // Cumulative counts: tally per core number, then suffix-sum downward.
    let mut node_hist = vec![0u64; max_core as usize + 1];
    for &c in &core {
        node_hist[c as usize] += 1;
    }
    let mut edge_hist = vec![0u64; max_core as usize + 1];
    for (u, v) in g.edges() {
        edge_hist[core[u as usize].min(core[v as usize]) as usize] += 1;
    }
    let mut nodes_in_core = BTreeMap::new();
    let mut edges_in_core = BTreeMap::new();
    let (mut nacc, mut eacc) = (0u64, 0u64);
    for k in (1..=max_core).rev() {
        nacc += node_hist[k as usize];
        eacc += edge_hist[k as usize];
        nodes_in_core.insert(k, nacc);
        edges_in_core.insert(k, eacc);
    }
    CoreDecomposition {
        core,
        max_core,
        nodes_in_core,
        edges_in_core,
    }
}

/// Which sources the hop-length histogram runs breadth-first search from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopSources {
    /// Every node; pair distances are exact and each unordered pair counts
    /// once.
    All,
    /// This many distinct random sources; counts are raw per-source tallies.
    Sample(usize),
}

impl HopSources {
    /// Default policy: exact up to 20k nodes, 256 sampled sources beyond.
    pub fn auto(n: usize) -> Self {
        if n > 20_000 {
            HopSources::Sample(256)
        } else {
            HopSources::All
        }
    }
}

#[derive(Debug, Clone)]
pub struct HopHistogram {
    /// hops -> count of (source, target) encounters at that distance.
    pub counts: BTreeMap<u32, u64>,
    /// Number of sampled sources; 0 means exact all-pairs counting.
    pub sampled_sources: usize,
}

fn bfs_tally(
    adj: &[Vec<NodeId>],
    source: NodeId,
    stamp: &mut [u32],
    mark: u32,
    dist: &mut [u32],
    queue: &mut VecDeque<NodeId>,
    counts: &mut Vec<u64>,
) {
    queue.clear();
    stamp[source as usize] = mark;
    dist[source as usize] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let d = dist[v as usize];
        if d > 0 {
            let idx = d as usize;
            if counts.len() <= idx {
                counts.resize(idx + 1, 0);
            }
            counts[idx] += 1;
        }
        for &w in &adj[v as usize] {
            if stamp[w as usize] != mark {
                stamp[w as usize] = mark;
                dist[w as usize] = d + 1;
                queue.push_back(w);
            }
        }
    }
}

/// Histogram of shortest-path lengths over reachable pairs.
pub fn hop_histogram<R: Rng + ?Sized>(g: &Graph, sources: HopSources, rng: &mut R) -> HopHistogram {
    let n = g.node_count();
    let adj = g.adjacency();
    let (source_list, sampled): (Vec<NodeId>, usize) = match sources {
        HopSources::All => ((0..n as u32).collect(), 0),
        HopSources::Sample(c) if c >= n => ((0..n as u32).collect(), 0),
        HopSources::Sample(c) => {
            // Partial Fisher-Yates for c distinct sources.
            let mut pool: Vec<NodeId> = (0..n as u32).collect();
            for i in 0..c {
                let j = rng.random_range(i..n);
                pool.swap(i, j);
            }
            pool.truncate(c);
            (pool, c)
        }
    };

    let chunk_size = 512.max(source_list.len() / 256 + 1);
    let per_chunk = |chunk: &[NodeId]| {
        let mut stamp = vec![u32::MAX; n];
        let mut dist = vec![0u32; n];
        let mut queue = VecDeque::new();
        let mut counts: Vec<u64> = Vec::new();
        for (i, &s) in chunk.iter().enumerate() {
            bfs_tally(adj, s, &mut stamp, i as u32, &mut dist, &mut queue, &mut counts);
        }
        counts
    };
    let merge = |mut a: Vec<u64>, b: Vec<u64>| {
        if a.len() < b.len() {
            a.resize(b.len(), 0);
        }
        for (i, x) in b.into_iter().enumerate() {
            a[i] += x;
        }
        a
    };
    #[cfg(feature = "parallel")]
    let totals: Vec<u64> = source_list
        .par_chunks(chunk_size)
        .map(per_chunk)
        .reduce(Vec::new, merge);
    #[cfg(not(feature = "parallel"))]
    let totals: Vec<u64> = source_list
        .chunks(chunk_size)
        .map(per_chunk)
        .fold(Vec::new(), merge);

    let exact = sampled == 0;
    let mut counts = BTreeMap::new();
    for (d, &c) in totals.iter().enumerate() {
        if c > 0 {
            // Exact mode visits each unordered pair from both ends.
            counts.insert(d as u32, if exact { c / 2 } else { c });
        }
    }
    HopHistogram {
        counts,
        sampled_sources: sampled,
    }
}

/// Number of bridge edges (edges whose removal disconnects their component),
/// by an iterative depth-first lowpoint computation.
pub fn bridge_count(g: &Graph) -> u64 {
    let n = g.node_count();
    let adj = g.adjacency();
    const UNVISITED: u32 = 0;
    let mut disc = vec![UNVISITED; n];
    let mut low = vec![0u32; n];
    let mut timer = 1u32;
    let mut bridges = 0u64;
    // Frame: (node, parent, next adjacency index). Simple graphs have at
    // most one edge back to the parent, so skipping `parent` outright never
    // hides a parallel edge.
    let mut stack: Vec<(u32, u32, usize)> = Vec::new();
    for root in 0..n as u32 {
        if disc[root as usize] != UNVISITED {
            continue;
        }
        disc[root as usize] = timer;
        low[root as usize] = timer;
        timer += 1;
        stack.push((root, u32::MAX, 0));
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            let vu = v as usize;
            if *idx < adj[vu].len() {
                let w = adj[vu][*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w as usize] == UNVISITED {
                    disc[w as usize] = timer;
                    low[w as usize] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else {
                    low[vu] = low[vu].min(disc[w as usize]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    let pu = p as usize;
                    low[pu] = low[pu].min(low[vu]);
                    if low[vu] > disc[pu] {
                        bridges += 1;
                    }
                }
            }
        }
    }
    bridges
}

/// Local-clustering summary for one degree bucket.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CcStats {
    pub count: u64,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

/// Full structural report for one topology. Serializes to stable JSON and
/// to per-distribution CSV files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricReport {
    pub schema_version: u32,
    pub name: String,
    pub nodes: usize,
    pub edges: usize,
    pub components: usize,
    pub triangle_total: u64,
    pub triple_total: u64,
    pub global_cc: f64,
    pub avg_cc: f64,
    /// Averaging convention: nodes of degree < 2 count as zero and are
    /// included in `avg_cc`'s denominator.
    pub cc_convention: String,
    pub bridge_count: u64,
    pub max_core: u32,
    pub degree_histogram: BTreeMap<u32, u64>,
    pub cc_by_degree: BTreeMap<u32, CcStats>,
    pub kcore_nodes: BTreeMap<u32, u64>,
    pub kcore_edges: BTreeMap<u32, u64>,
    pub hop_histogram: BTreeMap<u32, u64>,
    /// 0 when the hop histogram is exact over all pairs, otherwise the
    /// number of sampled sources.
    pub hop_sources: usize,
}

impl MetricReport {
    pub fn from_json_str(s: &str) -> Result<MetricReport> {
        let report: MetricReport = serde_json::from_str(s)?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaMismatch {
                expected: SCHEMA_VERSION,
                found: report.schema_version,
            });
        }
        Ok(report)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Writes one CSV per distribution into `dir` and returns the paths.
    pub fn write_csv_files(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut written = Vec::new();

        let path = dir.join("degree_histogram.csv");
        let mut f = std::io::BufWriter::new(std::fs::File::create(&path)?);
        writeln!(f, "degree,count")?;
        for (d, c) in &self.degree_histogram {
            writeln!(f, "{d},{c}")?;
        }
        f.flush()?;
        written.push(path);

        let path = dir.join("cc_by_degree.csv");
        let mut f = std::io::BufWriter::new(std::fs::File::create(&path)?);
        writeln!(f, "degree,count,mean_cc,min_cc,max_cc")?;
        for (d, s) in &self.cc_by_degree {
            writeln!(f, "{d},{},{},{},{}", s.count, s.mean, s.min, s.max)?;
        }
        f.flush()?;
        written.push(path);

        let path = dir.join("hop_histogram.csv");
        let mut f = std::io::BufWriter::new(std::fs::File::create(&path)?);
        writeln!(f, "hops,count")?;
        for (h, c) in &self.hop_histogram {
            writeln!(f, "{h},{c}")?;
        }
        f.flush()?;
        written.push(path);

        let path = dir.join("kcore.csv");
        let mut f = std::io::BufWriter::new(std::fs::File::create(&path)?);
        writeln!(f, "k,nodes,edges")?;
        for (k, nodes) in &self.kcore_nodes {
            let edges = self.kcore_edges.get(k).copied().unwrap_or(0);
            writeln!(f, "{k},{nodes},{edges}")?;
        }
        f.flush()?;
        written.push(path);

        Ok(written)
    }
}

/// Computes the full report. Triangle work is shared across the clustering
/// fields instead of recomputed per metric.
pub fn report<R: Rng + ?Sized>(
    g: &Graph,
    name: &str,
    sources: HopSources,
    rng: &mut R,
) -> MetricReport {
    let n = g.node_count();
    let tri = triangle_counts(g);
    let tri_sum: u64 = tri.iter().sum();
    let triangle_total = tri_sum / 3;
    let triple_total = triple_total(g);

    let mut cc_sum = 0.0f64;
    let mut by_degree: BTreeMap<u32, CcStats> = BTreeMap::new();
    for (v, adjv) in g.adjacency().iter().enumerate() {
        let d = adjv.len() as u32;
        let cc = if d < 2 {
            0.0
        } else {
            tri[v] as f64 / ((d as u64 * (d as u64 - 1) / 2) as f64)
        };
        cc_sum += cc;
        let entry = by_degree.entry(d).or_insert(CcStats {
            count: 0,
            mean: 0.0,
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
        });
        entry.count += 1;
        entry.mean += cc; // running sum; divided below
        entry.min = entry.min.min(cc);
        entry.max = entry.max.max(cc);
    }
    for stats in by_degree.values_mut() {
        stats.mean /= stats.count as f64;
    }

    let cores = kcore_decomposition(g);
    let hops = hop_histogram(g, sources, rng);
    let (_, components) = g.connected_components();

    MetricReport {
        schema_version: SCHEMA_VERSION,
        name: name.to_string(),
        nodes: n,
        edges: g.edge_count(),
        components,
        triangle_total,
        triple_total,
        global_cc: if triple_total == 0 {
            0.0
        } else {
            3.0 * triangle_total as f64 / triple_total as f64
        },
        avg_cc: if n == 0 { 0.0 } else { cc_sum / n as f64 },
        cc_convention: "degree<2 nodes count as zero and are included in avg_cc".to_string(),
        bridge_count: bridge_count(g),
        max_core: cores.max_core,
        degree_histogram: degree_histogram(g),
        cc_by_degree: by_degree,
        kcore_nodes: cores.nodes_in_core,
        kcore_edges: cores.edges_in_core,
        hop_histogram: hops.counts,
        hop_sources: hops.sampled_sources,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Triangle with a pendant: nodes 0-1-2 closed, 3 hangs off 0.
    fn paw() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn paw_graph_clustering() {
        let g = paw();
        assert_eq!(triangles_at(&g, 0).unwrap(), 1);
        assert_eq!(triples_at(&g, 0).unwrap(), 3);
        assert!((local_cc(&g, 0).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(local_cc(&g, 3).unwrap(), 0.0);
        // avg = (1/3 + 1 + 1 + 0) / 4 = 7/12
        assert!((avg_cc(&g) - 7.0 / 12.0).abs() < 1e-12);
        // global = 3*1 / (3+1+1+0) = 3/5
        assert!((global_cc(&g) - 0.6).abs() < 1e-12);
    }

    #[test]
    fn k4_metrics() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(triangle_total(&g), 4);
        assert_eq!(triple_total(&g), 12);
        assert!((global_cc(&g) - 1.0).abs() < 1e-12);
        assert!((avg_cc(&g) - 1.0).abs() < 1e-12);
        let cores = kcore_decomposition(&g);
        assert_eq!(cores.max_core, 3);
        assert_eq!(cores.nodes_in_core[&1], 4);
        assert_eq!(cores.nodes_in_core[&2], 4);
        assert_eq!(cores.nodes_in_core[&3], 4);
        assert_eq!(cores.edges_in_core[&3], 6);
        assert_eq!(bridge_count(&g), 0);
    }

    #[test]
    fn bulk_triangle_counts_match_per_node() {
        let g = paw();
        let bulk = triangle_counts(&g);
        for v in 0..4u32 {
            assert_eq!(bulk[v as usize], triangles_at(&g, v).unwrap());
        }
    }

    #[test]
    fn path_hop_histogram_exact() {
        // P4: distances 1 x3, 2 x2, 3 x1.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let h = hop_histogram(&g, HopSources::All, &mut rng);
        assert_eq!(h.sampled_sources, 0);
        assert_eq!(h.counts[&1], 3);
        assert_eq!(h.counts[&2], 2);
        assert_eq!(h.counts[&3], 1);
    }

    #[test]
    fn sampled_hop_histogram_counts_raw_rows() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let h = hop_histogram(&g, HopSources::Sample(2), &mut rng);
        assert_eq!(h.sampled_sources, 2);
        let total: u64 = h.counts.values().sum();
        // Each source reaches the 3 other nodes exactly once.
        assert_eq!(total, 6);
        // Oversampling falls back to exact mode.
        let h = hop_histogram(&g, HopSources::Sample(10), &mut rng);
        assert_eq!(h.sampled_sources, 0);
        assert_eq!(h.counts[&1], 3);
    }

    #[test]
    fn bridges_of_classic_shapes() {
        // Star: every edge is a bridge.
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(bridge_count(&star), 4);
        // Cycle: none.
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(bridge_count(&c5), 0);
        // Two triangles joined by one edge: exactly that edge.
        let barbell =
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
                .unwrap();
        assert_eq!(bridge_count(&barbell), 1);
        // Disconnected components are handled independently.
        let two = Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        assert_eq!(bridge_count(&two), 3);
    }

    #[test]
    fn kcore_of_triangle_with_tail() {
        // Triangle 0-1-2 with path 2-3-4: cores [2,2,2,1,1].
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        let c = kcore_decomposition(&g);
        assert_eq!(c.core, vec![2, 2, 2, 1, 1]);
        assert_eq!(c.max_core, 2);
        assert_eq!(c.nodes_in_core[&1], 5);
        assert_eq!(c.nodes_in_core[&2], 3);
        assert_eq!(c.edges_in_core[&1], 5);
        assert_eq!(c.edges_in_core[&2], 3);
    }

    #[test]
    fn empty_and_edgeless_graphs() {
        let empty = Graph::new(0);
        assert_eq!(triangle_total(&empty), 0);
        assert_eq!(global_cc(&empty), 0.0);
        assert_eq!(avg_cc(&empty), 0.0);
        assert_eq!(bridge_count(&empty), 0);

        let loose = Graph::new(3);
        assert_eq!(global_cc(&loose), 0.0);
        let c = kcore_decomposition(&loose);
        assert_eq!(c.max_core, 0);
        assert!(c.nodes_in_core.is_empty());
    }

    #[test]
    fn report_is_internally_consistent() {
        let g = paw();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = report(&g, "paw", HopSources::All, &mut rng);
        assert_eq!(r.nodes, 4);
        assert_eq!(r.edges, 4);
        assert_eq!(r.triangle_total, 1);
        assert_eq!(r.bridge_count, 1);
        assert_eq!(r.components, 1);
        let hist_total: u64 = r.degree_histogram.values().sum();
        assert_eq!(hist_total, 4);
        let cc_rows: u64 = r.cc_by_degree.values().map(|s| s.count).sum();
        assert_eq!(cc_rows, 4);
        // JSON round trip preserves everything we assert on.
        let json = r.to_json_string().unwrap();
        let back = MetricReport::from_json_str(&json).unwrap();
        assert_eq!(back.triangle_total, r.triangle_total);
        assert_eq!(back.hop_histogram, r.hop_histogram);
    }

    #[test]
    fn schema_mismatch_is_detected() {
        let g = paw();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut r = report(&g, "paw", HopSources::All, &mut rng);
        r.schema_version = 99;
        let json = r.to_json_string().unwrap();
        assert!(matches!(
            MetricReport::from_json_str(&json),
            Err(Error::SchemaMismatch {
                expected: 1,
                found: 99
            })
        ));
    }
}
