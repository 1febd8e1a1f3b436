//! Browser bindings for synthnet. Each exported function parses plain
//! numeric/string arguments from the page, runs entirely in the wasm module,
//! and returns a JSON string for the page's canvas plotting code.

use serde::Serialize;
use std::collections::BTreeMap;
use std::str::FromStr;
use synthnet::{
    exponent_for_mean, generate, metrics, powerlaw_sequence, run_sir, Algorithm, GenOutcome,
    GenParams, InitialInfected, SirParams,
};
use wasm_bindgen::prelude::*;

/// Hard cap so a typo in the node-count box cannot freeze the tab.
const MAX_NODES: usize = 200_000;

fn build(
    n: usize,
    mean_degree: f64,
    max_degree: u32,
    cc_target: f64,
    algorithm: &str,
    seed: u64,
    step: u64,
) -> Result<GenOutcome, String> {
    if n == 0 || n > MAX_NODES {
        return Err(format!("node count must be between 1 and {MAX_NODES}"));
    }
    let algorithm = Algorithm::from_str(algorithm).map_err(|e| e.to_string())?;
    let exponent =
        exponent_for_mean(mean_degree, 1, max_degree).map_err(|e| e.to_string())?;
    let degrees = powerlaw_sequence(n, exponent, 1, max_degree, seed)
        .map_err(|e| e.to_string())?;
    // The demo has no reference network to take a bridge count from, so give
    // siege a stand-in budget: half the edge budget, the rough share bridges
    // and tree-like attachments take in sparse real networks.
    let eb_count = synthnet::edge_budget(&degrees) / 2;
    let params = GenParams {
        degrees,
        cc_target,
        step,
        eb_count: Some(eb_count.max(1)),
    };
    generate(algorithm, &params, seed).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct GenerateView {
    algorithm: String,
    nodes: usize,
    edges: usize,
    components: usize,
    global_cc: f64,
    avg_cc: f64,
    triangle_total: u64,
    triangle_target: u64,
    triangles_closed: u64,
    bridge_count: u64,
    max_core: u32,
    /// Degree histogram of the input sequence, as `[degree, count]` pairs.
    target_degree_histogram: Vec<(u32, u64)>,
    /// Degree histogram of the generated graph.
    degree_histogram: Vec<(u32, u64)>,
    /// Mean local clustering per degree, as `[degree, mean_cc]` pairs.
    cc_by_degree: Vec<(u32, f64)>,
    /// `[k, nodes in k-core]` pairs.
    kcore_nodes: Vec<(u32, u64)>,
}

/// Generate one network and measure it. Returns a JSON `GenerateView`.
#[wasm_bindgen]
pub fn generate_network(
    n: usize,
    mean_degree: f64,
    max_degree: u32,
    cc_target: f64,
    algorithm: &str,
    seed: u64,
    step: u64,
) -> Result<String, String> {
    let out = build(n, mean_degree, max_degree, cc_target, algorithm, seed, step)?;
    let g = &out.graph;

    let mut target_hist: BTreeMap<u32, u64> = BTreeMap::new();
    let exponent = exponent_for_mean(mean_degree, 1, max_degree).unwrap();
    for d in powerlaw_sequence(n, exponent, 1, max_degree, seed).unwrap() {
        *target_hist.entry(d).or_insert(0) += 1;
    }

    let tri = metrics::triangle_counts(g);
    let mut cc_sums: BTreeMap<u32, (f64, u64)> = BTreeMap::new();
    for (v, adjv) in g.adjacency().iter().enumerate() {
        let d = adjv.len() as u32;
        if d < 2 {
            continue;
        }
        let cc = tri[v] as f64 / ((d as u64 * (d as u64 - 1) / 2) as f64);
        let e = cc_sums.entry(d).or_insert((0.0, 0));
        e.0 += cc;
        e.1 += 1;
    }
    let cores = metrics::kcore_decomposition(g);

    let view = GenerateView {
        algorithm: out.stats.algorithm.to_string(),
        nodes: g.node_count(),
        edges: g.edge_count(),
        components: g.connected_components().1,
        global_cc: metrics::global_cc(g),
        avg_cc: metrics::avg_cc(g),
        triangle_total: metrics::triangle_total(g),
        triangle_target: out.stats.triangle_target,
        triangles_closed: out.stats.triangles_closed,
        bridge_count: metrics::bridge_count(g),
        max_core: cores.max_core,
        target_degree_histogram: target_hist.into_iter().collect(),
        degree_histogram: metrics::degree_histogram(g).into_iter().collect(),
        cc_by_degree: cc_sums
            .into_iter()
            .map(|(d, (sum, cnt))| (d, sum / cnt as f64))
            .collect(),
        kcore_nodes: cores.nodes_in_core.into_iter().collect(),
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct CompareRow {
    algorithm: String,
    edges: usize,
    global_cc: f64,
    avg_cc: f64,
    triangle_total: u64,
    bridge_count: u64,
    max_core: u32,
}

/// Run all three generators on the same degree sequence and seed.
/// Returns a JSON array of `CompareRow`.
#[wasm_bindgen]
pub fn compare_algorithms(
    n: usize,
    mean_degree: f64,
    max_degree: u32,
    cc_target: f64,
    seed: u64,
    step: u64,
) -> Result<String, String> {
    let mut rows = Vec::new();
    for algo in Algorithm::ALL {
        let out = build(
            n,
            mean_degree,
            max_degree,
            cc_target,
            algo.name(),
            seed,
            step,
        )?;
        let g = &out.graph;
        rows.push(CompareRow {
            algorithm: algo.to_string(),
            edges: g.edge_count(),
            global_cc: metrics::global_cc(g),
            avg_cc: metrics::avg_cc(g),
            triangle_total: metrics::triangle_total(g),
            bridge_count: metrics::bridge_count(g),
            max_core: metrics::kcore_decomposition(g).max_core,
        });
    }
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct SirView {
    nodes: usize,
    edges: usize,
    beta: f64,
    gamma: f64,
    peak_infected: u64,
    peak_step: usize,
    total_infected: u64,
    steps: usize,
    /// `[t, s, i, r]` rows.
    series: Vec<(u32, u64, u64, u64)>,
}

/// Generate a network, seed an epidemic on it, and return the JSON
/// `SirView` time series.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn sir_simulate(
    n: usize,
    mean_degree: f64,
    max_degree: u32,
    cc_target: f64,
    algorithm: &str,
    seed: u64,
    step: u64,
    beta: f64,
    gamma: f64,
    sources: usize,
) -> Result<String, String> {
    let out = build(n, mean_degree, max_degree, cc_target, algorithm, seed, step)?;
    let params = SirParams {
        beta,
        gamma,
        initial: InitialInfected::Count(sources),
        max_steps: 10_000,
    };
    let trace = run_sir(&out.graph, &params, seed).map_err(|e| e.to_string())?;

    let series: Vec<(u32, u64, u64, u64)> = trace
        .series
        .iter()
        .map(|s| (s.t, s.s, s.i, s.r))
        .collect();
    let (peak_step, peak_infected) = series
        .iter()
        .enumerate()
        .map(|(i, row)| (i, row.2))
        .max_by_key(|&(_, inf)| inf)
        .unwrap_or((0, 0));
    let total_infected = series.last().map(|row| row.3 + row.2).unwrap_or(0);

    let view = SirView {
        nodes: out.graph.node_count(),
        edges: out.graph.edge_count(),
        beta,
        gamma,
        peak_infected,
        peak_step,
        total_infected,
        steps: series.len(),
        series,
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_view_is_valid_json() {
        let s = generate_network(500, 4.0, 50, 0.4, "sage", 1, 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["nodes"], 500);
        assert!(v["edges"].as_u64().unwrap() > 0);
    }

    #[test]
    fn compare_covers_all_algorithms() {
        let s = compare_algorithms(300, 4.0, 30, 0.4, 2, 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let names: Vec<&str> = v
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["algorithm"].as_str().unwrap())
            .collect();
        assert_eq!(names, ["synth", "sage", "siege"]);
    }

    #[test]
    fn sir_series_conserves_population() {
        let s = sir_simulate(400, 4.0, 40, 0.4, "synth", 3, 1, 0.3, 0.5, 5).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        for row in v["series"].as_array().unwrap() {
            let r = row.as_array().unwrap();
            let total = r[1].as_u64().unwrap() + r[2].as_u64().unwrap() + r[3].as_u64().unwrap();
            assert_eq!(total, 400);
        }
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(generate_network(0, 4.0, 50, 0.4, "sage", 1, 1).is_err());
        assert!(generate_network(100, 4.0, 50, 0.4, "nope", 1, 1).is_err());
    }
}
