//! Generators that grow a graph toward a degree sequence and a target
//! global clustering coefficient.
//!
//! All three algorithms share the same two-phase skeleton. Phase one spends
//! the triangle budget: sample three distinct nodes by residual degree,
//! check the closure is feasible, and add whatever edges are missing among
//! the three pairs. Phase two spends the remaining edge budget one edge at a
//! time. They differ in how residual degrees decay and in how phase two is
//! budgeted:
//!
//! * `Synth` decrements residuals plainly in both phases, so a node drops
//!   out of the distribution once its degree is satisfied.
//! * `Sage` attenuates decrements (residuals floor at 1), trading exact
//!   degree preservation for less clustering concentration.
//! * `Siege` closes triangles like `Sage`, then abandons the leftover edge
//!   budget and instead adds as many single edges as the real network has
//!   bridges, which pushes clustering down toward tree-like territory.

use crate::error::Error;
use crate::graph::{Graph, NodeId};
use crate::residual::ResidualDist;
use crate::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Synth,
    Sage,
    Siege,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Synth, Algorithm::Sage, Algorithm::Siege];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Synth => "synth",
            Algorithm::Sage => "sage",
            Algorithm::Siege => "siege",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "synth" => Ok(Algorithm::Synth),
            "sage" => Ok(Algorithm::Sage),
            "siege" => Ok(Algorithm::Siege),
            other => Err(Error::InvalidParameter(format!(
                "unknown algorithm {other:?} (expected synth, sage, or siege)"
            ))),
        }
    }
}

/// Inputs shared by all generators. The node count is `degrees.len()`;
/// nodes with degree zero stay in the graph as isolated nodes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenParams {
    /// Target degree per node.
    pub degrees: Vec<u32>,
    /// Target global clustering coefficient in `[0, 1]`.
    pub cc_target: f64,
    /// Snapshot refresh interval for residual sampling; 1 = always fresh.
    pub step: u64,
    /// Edge-bridge count of the reference network; required by `Siege`.
    pub eb_count: Option<u64>,
}

impl GenParams {
    fn validate(&self, algorithm: Algorithm) -> Result<()> {
        if self.degrees.len() > u32::MAX as usize {
            return Err(Error::InvalidParameter(
                "node count exceeds u32 id space".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.cc_target) || self.cc_target.is_nan() {
            return Err(Error::InvalidParameter(format!(
                "cc_target must lie in [0, 1], got {}",
                self.cc_target
            )));
        }
        if self.step == 0 {
            return Err(Error::InvalidParameter("step must be >= 1".into()));
        }
        if algorithm == Algorithm::Siege && self.eb_count.is_none() {
            return Err(Error::MissingEbCount);
        }
        Ok(())
    }
}

/// Total edges the degree sequence pays for: `floor(sum(d) / 2)`.
pub fn edge_budget(degrees: &[u32]) -> u64 {
    degrees.iter().map(|&d| d as u64).sum::<u64>() / 2
}

/// Connected triples the sequence would induce: `sum(C(d, 2))`.
pub fn triple_sum(degrees: &[u32]) -> u128 {
    degrees
        .iter()
        .map(|&d| {
            let d = d as u128;
            if d < 2 {
                0
            } else {
                d * (d - 1) / 2
            }
        })
        .sum()
}

/// Triangles needed to hit the clustering target:
/// `floor(cc_target * sum(C(d, 2)) / 3)`.
pub fn triangle_target(degrees: &[u32], cc_target: f64) -> u64 {
    (cc_target * (triple_sum(degrees) as f64) / 3.0).floor() as u64
}

/// How a phase finished.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseEnd {
    /// Budget spent or target met.
    Completed,
    /// The stall guard tripped: `50 * step` consecutive samples added no edge.
    Stalled,
    /// The residual distribution could no longer supply distinct nodes.
    Exhausted,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhaseLog {
    pub triangle_edges: u64,
    pub triangle_end: PhaseEnd,
    pub single_edges: u64,
    /// Initial budget of the single-edge phase: leftover `M` for synth and
    /// sage, the edge-bridge count for siege.
    pub single_budget: u64,
    pub single_end: PhaseEnd,
    /// Samples that added nothing (existing edges, infeasible closures).
    pub rejected_samples: u64,
}

/// Scalar summary of one generator run; everything except the graph itself.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenStats {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub nodes: usize,
    pub edges: usize,
    pub edge_budget: u64,
    pub triangle_target: u64,
    pub triangles_closed: u64,
    pub triangles_remaining: u64,
    /// Unspent edge budget when its phase ended. For siege this is the
    /// remainder discarded when the bridge-budgeted phase took over.
    pub edges_remaining: u64,
    pub phase_log: PhaseLog,
}

#[derive(Debug)]
pub struct GenOutcome {
    pub graph: Graph,
    pub stats: GenStats,
}

/// Adds the edges missing among the three pairs of `{u, v, w}`, decrementing
/// both endpoints' residuals per added edge (attenuated or plain), and
/// returns how many edges were added. Callers are expected to have verified
/// feasibility first; `u`, `v`, `w` must be distinct valid ids.
pub fn close_triangle(
    g: &mut Graph,
    u: NodeId,
    v: NodeId,
    w: NodeId,
    rdist: &mut ResidualDist,
    attenuated: bool,
) -> Result<u64> {
    debug_assert!(u != v && v != w && u != w);
    let mut added = 0u64;
    for (a, b) in [(u, v), (v, w), (u, w)] {
        if g.add_edge(a, b)? {
            added += 1;
            if attenuated {
                rdist.decrement_attenuated(a)?;
                rdist.decrement_attenuated(b)?;
            } else {
                rdist.decrement(a)?;
                rdist.decrement(b)?;
            }
        }
    }
    Ok(added)
}

pub fn generate_synth(params: &GenParams, seed: u64) -> Result<GenOutcome> {
    generate(Algorithm::Synth, params, seed)
}

pub fn generate_sage(params: &GenParams, seed: u64) -> Result<GenOutcome> {
    generate(Algorithm::Sage, params, seed)
}

pub fn generate_siege(params: &GenParams, seed: u64) -> Result<GenOutcome> {
    generate(Algorithm::Siege, params, seed)
}

pub fn generate(algorithm: Algorithm, params: &GenParams, seed: u64) -> Result<GenOutcome> {
    generate_with_progress(algorithm, params, seed, &mut |_| {})
}

/// Like [`generate`], invoking `progress` with the running edge total after
/// every added edge so long runs can report liveness.
pub fn generate_with_progress(
    algorithm: Algorithm,
    params: &GenParams,
    seed: u64,
    progress: &mut dyn FnMut(u64),
) -> Result<GenOutcome> {
    params.validate(algorithm)?;
    let n = params.degrees.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    let mut rdist = ResidualDist::new(&params.degrees, params.step)?;

    let m0 = edge_budget(&params.degrees);
    let t0 = triangle_target(&params.degrees, params.cc_target);
    let mut m = m0;
    let mut t = t0;
    let stall_limit = 50 * params.step;
    let attenuated = algorithm != Algorithm::Synth;

    let mut rejected = 0u64;
    let mut total_edges = 0u64;

    // Phase one: close triangles until the target is met or the edge budget
    // runs dry.
    let mut triangle_edges = 0u64;
    let mut closures = 0u64;
    let mut stall = 0u64;
    let mut ids = [0 as NodeId; 3];
    let triangle_end = loop {
        if t == 0 || m == 0 {
            break PhaseEnd::Completed;
        }
        if stall >= stall_limit {
            break PhaseEnd::Stalled;
        }
        match rdist.sample_distinct(&mut ids, &mut rng) {
            Ok(()) => {}
            Err(Error::Exhausted { .. }) => break PhaseEnd::Exhausted,
            Err(e) => return Err(e),
        }
        let [u, v, w] = ids;
        let miss_uv = !g.contains(u, v);
        let miss_vw = !g.contains(v, w);
        let miss_uw = !g.contains(u, w);
        let new_edges = miss_uv as u64 + miss_vw as u64 + miss_uw as u64;
        // A closure must add something, fit the remaining budget, and leave
        // every endpoint's residual degree non-negative.
        let feasible = new_edges > 0
            && new_edges <= m
            && rdist.residual(u) >= (miss_uv as u64 + miss_uw as u64)
            && rdist.residual(v) >= (miss_uv as u64 + miss_vw as u64)
            && rdist.residual(w) >= (miss_vw as u64 + miss_uw as u64);
        if !feasible {
            rejected += 1;
            stall += 1;
            continue;
        }
        let added = close_triangle(&mut g, u, v, w, &mut rdist, attenuated)?;
        debug_assert_eq!(added, new_edges);
        m -= added;
        t -= 1;
        closures += 1;
        triangle_edges += added;
        total_edges += added;
        stall = 0;
        progress(total_edges);
    };
    let m_after_triangles = m;

    // Phase two: single edges. Synth and sage spend the leftover edge
    // budget; siege discards it and spends the reference bridge count
    // instead, sampling from unit-floored weights so drained nodes remain
    // candidates.
    let single_budget = match algorithm {
        Algorithm::Siege => params.eb_count.expect("validated above"),
        _ => m,
    };
    if attenuated {
        rdist.set_unit_floor(true);
    }
    let mut single_edges = 0u64;
    let mut budget = single_budget;
    stall = 0;
    let mut pair = [0 as NodeId; 2];
    let single_end = if budget == 0 {
        PhaseEnd::Completed
    } else if rdist.snapshot().is_err() {
        // Plain weights with nothing left to give (synth only).
        PhaseEnd::Exhausted
    } else {
        loop {
            if budget == 0 {
                break PhaseEnd::Completed;
            }
            if stall >= stall_limit {
                break PhaseEnd::Stalled;
            }
            match rdist.sample_distinct(&mut pair, &mut rng) {
                Ok(()) => {}
                Err(Error::Exhausted { .. }) => break PhaseEnd::Exhausted,
                Err(e) => return Err(e),
            }
            let [a, b] = pair;
            // With plain weights a stale snapshot can still offer a node
            // whose residual already hit zero; adding that edge would exceed
            // the degree sequence, so treat it as a rejection.
            let usable = !g.contains(a, b)
                && (attenuated || (rdist.residual(a) > 0 && rdist.residual(b) > 0));
            if !usable {
                rejected += 1;
                stall += 1;
                continue;
            }
            g.add_edge(a, b)?;
            if attenuated {
                rdist.decrement_saturating(a)?;
                rdist.decrement_saturating(b)?;
            } else {
                rdist.decrement(a)?;
                rdist.decrement(b)?;
            }
            budget -= 1;
            single_edges += 1;
            total_edges += 1;
            stall = 0;
            progress(total_edges);
        }
    };

    let edges_remaining = match algorithm {
        Algorithm::Siege => m_after_triangles,
        _ => budget,
    };
    let stats = GenStats {
        algorithm,
        seed,
        nodes: n,
        edges: g.edge_count(),
        edge_budget: m0,
        triangle_target: t0,
        triangles_closed: closures,
        triangles_remaining: t,
        edges_remaining,
        phase_log: PhaseLog {
            triangle_edges,
            triangle_end,
            single_edges,
            single_budget,
            single_end,
            rejected_samples: rejected,
        },
    };
    Ok(GenOutcome { graph: g, stats })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(degrees: &[u32], cc: f64) -> GenParams {
        GenParams {
            degrees: degrees.to_vec(),
            cc_target: cc,
            step: 1,
            eb_count: None,
        }
    }

    #[test]
    fn budgets_match_hand_values() {
        // d = [3, 2, 2, 1]: sum 8 -> M = 4; C(3,2)+C(2,2)*2... triples are
        // 3 + 1 + 1 + 0 = 5; cc 0.6 -> T = floor(0.6 * 5 / 3) = 1.
        let d = [3, 2, 2, 1];
        assert_eq!(edge_budget(&d), 4);
        assert_eq!(triple_sum(&d), 5);
        assert_eq!(triangle_target(&d, 0.6), 1);
        assert_eq!(triangle_target(&d, 0.0), 0);
    }

    #[test]
    fn full_clustering_on_three_twos_builds_a_triangle() {
        // M = 3, T = 1: one closure spends the whole budget.
        let out = generate_synth(&params(&[2, 2, 2], 1.0), 11).unwrap();
        assert_eq!(out.graph.edge_count(), 3);
        assert_eq!(out.stats.triangles_closed, 1);
        assert_eq!(out.stats.triangles_remaining, 0);
        for v in 0..3 {
            assert_eq!(out.graph.degree(v).unwrap(), 2);
        }
    }

    #[test]
    fn zero_clustering_two_ones_builds_single_edge() {
        let out = generate_synth(&params(&[1, 1], 0.0), 5).unwrap();
        assert_eq!(out.stats.triangle_target, 0);
        assert_eq!(out.graph.edge_count(), 1);
        assert!(out.graph.has_edge(0, 1).unwrap());
    }

    #[test]
    fn same_seed_reproduces_same_graph() {
        let p = GenParams {
            degrees: crate::degrees::powerlaw_sequence(400, 2.0, 1, 30, 3).unwrap(),
            cc_target: 0.4,
            step: 10,
            eb_count: Some(50),
        };
        for algo in Algorithm::ALL {
            let a = generate(algo, &p, 99).unwrap();
            let b = generate(algo, &p, 99).unwrap();
            assert_eq!(a.graph.sorted_edges(), b.graph.sorted_edges());
            let c = generate(algo, &p, 100).unwrap();
            assert_ne!(
                a.graph.sorted_edges(),
                c.graph.sorted_edges(),
                "{algo}: different seeds should differ"
            );
        }
    }

    #[test]
    fn synth_never_exceeds_degree_sequence() {
        let degrees = crate::degrees::powerlaw_sequence(600, 1.8, 1, 40, 8).unwrap();
        for step in [1, 7, 100] {
            let p = GenParams {
                degrees: degrees.clone(),
                cc_target: 0.5,
                step,
                eb_count: None,
            };
            let out = generate_synth(&p, 21).unwrap();
            for (v, &d) in degrees.iter().enumerate() {
                let realized = out.graph.degree(v as u32).unwrap() as u32;
                assert!(
                    realized <= d,
                    "step {step}: node {v} realized {realized} > target {d}"
                );
            }
            assert!(out.graph.edge_count() as u64 <= out.stats.edge_budget);
        }
    }

    #[test]
    fn siege_requires_eb_count() {
        let err = generate_siege(&params(&[2, 2, 2, 2], 0.5), 1).unwrap_err();
        assert!(matches!(err, Error::MissingEbCount));
    }

    #[test]
    fn siege_single_phase_is_bridge_budgeted() {
        let mut p = params(&[3; 200], 0.0);
        p.eb_count = Some(40);
        let out = generate_siege(&p, 17).unwrap();
        // cc_target 0 means no triangle phase at all: every edge comes from
        // the bridge-budgeted phase.
        assert_eq!(out.stats.phase_log.triangle_edges, 0);
        assert_eq!(out.stats.phase_log.single_budget, 40);
        assert_eq!(out.stats.phase_log.single_edges, 40);
        assert_eq!(out.graph.edge_count(), 40);
        // The leftover M (300) was discarded, not spent.
        assert_eq!(out.stats.edges_remaining, 300);
    }

    #[test]
    fn edge_counts_reconcile_with_phase_log() {
        let degrees = crate::degrees::powerlaw_sequence(500, 2.2, 1, 25, 4).unwrap();
        for algo in Algorithm::ALL {
            let p = GenParams {
                degrees: degrees.clone(),
                cc_target: 0.6,
                step: 5,
                eb_count: Some(120),
            };
            let out = generate(algo, &p, 7).unwrap();
            let log = &out.stats.phase_log;
            assert_eq!(
                out.graph.edge_count() as u64,
                log.triangle_edges + log.single_edges,
                "{algo}"
            );
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(generate_synth(&params(&[1, 1], -0.1), 0).is_err());
        assert!(generate_synth(&params(&[1, 1], 1.5), 0).is_err());
        let mut p = params(&[1, 1], 0.5);
        p.step = 0;
        assert!(generate_synth(&p, 0).is_err());
    }

    #[test]
    fn empty_and_all_zero_sequences_yield_empty_graphs() {
        let out = generate_synth(&params(&[], 0.7), 1).unwrap();
        assert_eq!(out.graph.node_count(), 0);
        assert_eq!(out.graph.edge_count(), 0);

        let out = generate_sage(&params(&[0, 0, 0], 0.7), 1).unwrap();
        assert_eq!(out.graph.node_count(), 3);
        assert_eq!(out.graph.edge_count(), 0);
    }
}
