//! Discrete-time SIR epidemics on a fixed contact network.
//!
//! Synchronous updates: every node infectious at the start of a step tries
//! to infect each currently susceptible neighbor with probability `beta`,
//! then recovers with probability `gamma`. Nodes infected during a step
//! become infectious at the next one.

use crate::error::Error;
use crate::graph::{Graph, NodeId};
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::io::Write;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum InitialInfected {
    /// Uniformly random distinct seed nodes.
    Count(usize),
    /// Explicit seed nodes (distinct, in range).
    Nodes(Vec<NodeId>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SirParams {
    pub beta: f64,
    pub gamma: f64,
    pub initial: InitialInfected,
    pub max_steps: u32,
}

impl Default for SirParams {
    fn default() -> Self {
        SirParams {
            beta: 0.3,
            gamma: 0.5,
            initial: InitialInfected::Count(10),
            max_steps: 1000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SirStep {
    pub t: u32,
    pub s: u64,
    pub i: u64,
    pub r: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SirTrace {
    pub beta: f64,
    pub gamma: f64,
    pub seed_nodes: Vec<NodeId>,
    pub series: Vec<SirStep>,
}

impl SirTrace {
    /// Largest infected count and the first step at which it occurs.
    pub fn peak(&self) -> (u32, u64) {
        self.series
            .iter()
            .map(|row| (row.t, row.i))
            .max_by_key(|&(t, i)| (i, std::cmp::Reverse(t)))
            .unwrap_or((0, 0))
    }

    /// True if the epidemic died out within the simulated horizon.
    pub fn extinguished(&self) -> bool {
        self.series.last().is_some_and(|row| row.i == 0)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "t,s,i,r")?;
        for row in &self.series {
            writeln!(out, "{},{},{},{}", row.t, row.s, row.i, row.r)?;
        }
        Ok(())
    }
}

const SUSCEPTIBLE: u8 = 0;
const INFECTED: u8 = 1;
const RECOVERED: u8 = 2;
const NEWLY_INFECTED: u8 = 3;

pub fn run_sir(g: &Graph, params: &SirParams, seed: u64) -> Result<SirTrace> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "SIR needs a non-empty graph".into(),
        ));
    }
    for (label, p) in [("beta", params.beta), ("gamma", params.gamma)] {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::InvalidParameter(format!(
                "{label} must lie in [0, 1], got {p}"
            )));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seeds: Vec<NodeId> = match &params.initial {
        InitialInfected::Count(c) => {
            if *c == 0 || *c > n {
                return Err(Error::InvalidParameter(format!(
                    "initial infected count {c} must lie in 1..={n}"
                )));
            }
            let mut pool: Vec<NodeId> = (0..n as u32).collect();
            for i in 0..*c {
                let j = rng.random_range(i..n);
                pool.swap(i, j);
            }
            pool.truncate(*c);
            pool
        }
        InitialInfected::Nodes(nodes) => {
            if nodes.is_empty() {
                return Err(Error::InvalidParameter(
                    "initial infected set must not be empty".into(),
                ));
            }
            for &v in nodes {
                if v as usize >= n {
                    return Err(Error::NodeOutOfRange {
                        id: v as u64,
                        nodes: n,
                    });
                }
            }
            let mut sorted = nodes.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(
                    "initial infected nodes must be distinct".into(),
                ));
            }
            sorted
        }
    };
    seeds.sort_unstable();

    let mut state = vec![SUSCEPTIBLE; n];
    for &v in &seeds {
        state[v as usize] = INFECTED;
    }
    // Kept sorted ascending so RNG consumption is reproducible.
    let mut infected: Vec<NodeId> = seeds.clone();
    let mut s_count = (n - infected.len()) as u64;
    let mut i_count = infected.len() as u64;
    let mut r_count = 0u64;

    let mut series = vec![SirStep {
        t: 0,
        s: s_count,
        i: i_count,
        r: r_count,
    }];

    let adj = g.adjacency();
    for t in 1..=params.max_steps {
        if infected.is_empty() {
            break;
        }
        // Infection sweep over step-start infectious nodes.
        let mut newly: Vec<NodeId> = Vec::new();
        for &v in &infected {
            for &w in &adj[v as usize] {
                if state[w as usize] == SUSCEPTIBLE && rng.random::<f64>() < params.beta {
                    state[w as usize] = NEWLY_INFECTED;
                    newly.push(w);
                }
            }
        }
        // Recovery sweep over the same step-start set.
        let mut survivors: Vec<NodeId> = Vec::with_capacity(infected.len());
        for &v in &infected {
            if rng.random::<f64>() < params.gamma {
                state[v as usize] = RECOVERED;
                r_count += 1;
                i_count -= 1;
            } else {
                survivors.push(v);
            }
        }
        newly.sort_unstable();
        for &w in &newly {
            state[w as usize] = INFECTED;
        }
        s_count -= newly.len() as u64;
        i_count += newly.len() as u64;

        // Merge two ascending lists back into one.
        let mut merged = Vec::with_capacity(survivors.len() + newly.len());
        let (mut a, mut b) = (0usize, 0usize);
        while a < survivors.len() && b < newly.len() {
            if survivors[a] < newly[b] {
                merged.push(survivors[a]);
                a += 1;
            } else {
                merged.push(newly[b]);
                b += 1;
            }
        }
        merged.extend_from_slice(&survivors[a..]);
        merged.extend_from_slice(&newly[b..]);
        infected = merged;

        series.push(SirStep {
            t,
            s: s_count,
            i: i_count,
            r: r_count,
        });
        if i_count == 0 {
            break;
        }
    }

    Ok(SirTrace {
        beta: params.beta,
        gamma: params.gamma,
        seed_nodes: seeds,
        series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn k3_with_certain_spread_and_recovery() {
        // beta = gamma = 1 makes the process deterministic: the seed infects
        // both neighbors and recovers at t=1; the neighbors recover at t=2.
        let params = SirParams {
            beta: 1.0,
            gamma: 1.0,
            initial: InitialInfected::Nodes(vec![0]),
            max_steps: 10,
        };
        let trace = run_sir(&k3(), &params, 99).unwrap();
        assert_eq!(
            trace.series,
            vec![
                SirStep { t: 0, s: 2, i: 1, r: 0 },
                SirStep { t: 1, s: 0, i: 2, r: 1 },
                SirStep { t: 2, s: 0, i: 0, r: 3 },
            ]
        );
        assert!(trace.extinguished());
        assert_eq!(trace.peak(), (1, 2));
    }

    #[test]
    fn population_is_conserved_and_monotone() {
        let g = crate::generate::generate_synth(
            &crate::generate::GenParams {
                degrees: crate::degrees::powerlaw_sequence(300, 2.0, 1, 20, 5).unwrap(),
                cc_target: 0.3,
                step: 1,
                eb_count: None,
            },
            4,
        )
        .unwrap()
        .graph;
        let trace = run_sir(&g, &SirParams::default(), 123).unwrap();
        let n = g.node_count() as u64;
        for pair in trace.series.windows(2) {
            assert_eq!(pair[1].s + pair[1].i + pair[1].r, n);
            assert!(pair[1].s <= pair[0].s, "S must not increase");
            assert!(pair[1].r >= pair[0].r, "R must not decrease");
        }
    }

    #[test]
    fn beta_zero_never_spreads() {
        let params = SirParams {
            beta: 0.0,
            gamma: 0.5,
            initial: InitialInfected::Nodes(vec![1]),
            max_steps: 1000,
        };
        let trace = run_sir(&k3(), &params, 7).unwrap();
        assert!(trace.extinguished());
        let last = trace.series.last().unwrap();
        assert_eq!(last.s, 2);
        assert_eq!(last.r, 1);
    }

    #[test]
    fn gamma_zero_hits_the_step_cap() {
        let params = SirParams {
            beta: 0.0,
            gamma: 0.0,
            initial: InitialInfected::Nodes(vec![0]),
            max_steps: 25,
        };
        let trace = run_sir(&k3(), &params, 7).unwrap();
        assert!(!trace.extinguished());
        assert_eq!(trace.series.len(), 26); // t = 0..=25
        assert_eq!(trace.series.last().unwrap().i, 1);
    }

    #[test]
    fn same_seed_same_trace() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
            .unwrap();
        let params = SirParams {
            initial: InitialInfected::Count(2),
            ..SirParams::default()
        };
        let a = run_sir(&g, &params, 42).unwrap();
        let b = run_sir(&g, &params, 42).unwrap();
        assert_eq!(a.series, b.series);
        assert_eq!(a.seed_nodes, b.seed_nodes);
        let c = run_sir(&g, &params, 43).unwrap();
        assert!(c.seed_nodes != a.seed_nodes || c.series != a.series);
    }

    #[test]
    fn invalid_inputs_error() {
        let g = k3();
        let bad_beta = SirParams {
            beta: 1.5,
            ..SirParams::default()
        };
        assert!(run_sir(&g, &bad_beta, 0).is_err());

        let dup = SirParams {
            initial: InitialInfected::Nodes(vec![1, 1]),
            ..SirParams::default()
        };
        assert!(run_sir(&g, &dup, 0).is_err());

        let oor = SirParams {
            initial: InitialInfected::Nodes(vec![9]),
            ..SirParams::default()
        };
        assert!(matches!(
            run_sir(&g, &oor, 0),
            Err(Error::NodeOutOfRange { id: 9, nodes: 3 })
        ));

        let too_many = SirParams {
            initial: InitialInfected::Count(4),
            ..SirParams::default()
        };
        assert!(run_sir(&g, &too_many, 0).is_err());

        assert!(run_sir(&Graph::new(0), &SirParams::default(), 0).is_err());
    }

    #[test]
    fn csv_output_shape() {
        let params = SirParams {
            beta: 1.0,
            gamma: 1.0,
            initial: InitialInfected::Nodes(vec![0]),
            max_steps: 10,
        };
        let trace = run_sir(&k3(), &params, 1).unwrap();
        let mut buf = Vec::new();
        trace.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "t,s,i,r\n0,2,1,0\n1,0,2,1\n2,0,0,3\n");
    }
}
