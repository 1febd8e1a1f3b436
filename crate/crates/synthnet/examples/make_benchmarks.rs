//! Regenerates the benchmark fixtures committed under `data/`.
//!
//! The two graphs are deterministic stand-ins for SNAP's ca-GrQc and
//! oregon1_010428 snapshots, shaped to match their published summary
//! statistics (node/edge counts exactly; triangle count, clustering, bridge
//! count, and degree texture approximately). See `data/README.md` for the
//! target numbers and for how to substitute the genuine SNAP files.
//!
//! Run from the workspace root:
//!
//! ```text
//! cargo run -p synthnet --example make_benchmarks
//! ```

use hashbrown::HashSet;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::path::Path;
use synthnet::{Graph, NodeId};

fn key(u: NodeId, v: NodeId) -> u64 {
    ((u.min(v) as u64) << 32) | u.max(v) as u64
}

/// Edge accumulator with O(1) dedup; keeps adjacency current so the texture
/// passes below can make degree-aware choices cheaply.
struct Builder {
    n: usize,
    edges: HashSet<u64>,
    adj: Vec<Vec<NodeId>>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder {
            n,
            edges: HashSet::new(),
            adj: vec![Vec::new(); n],
        }
    }

    fn add(&mut self, u: NodeId, v: NodeId) -> bool {
        if u == v {
            return false;
        }
        if self.edges.insert(key(u, v)) {
            self.adj[u as usize].push(v);
            self.adj[v as usize].push(u);
            true
        } else {
            false
        }
    }

    fn degree(&self, v: NodeId) -> usize {
        self.adj[v as usize].len()
    }

    fn clique(&mut self, members: &[NodeId]) {
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                self.add(u, v);
            }
        }
    }

    fn len(&self) -> usize {
        self.edges.len()
    }

    fn into_graph(self) -> Graph {
        let pairs: Vec<(NodeId, NodeId)> = self
            .edges
            .iter()
            .map(|&k| ((k >> 32) as NodeId, (k & 0xffff_ffff) as NodeId))
            .collect();
        Graph::from_edges(self.n, &pairs).expect("edges in range")
    }
}

/// Weighted choice over indices 0..weights.len().
fn weighted(rng: &mut ChaCha8Rng, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    let mut r = rng.random_range(0.0..total);
    for (i, w) in weights.iter().enumerate() {
        if r < *w {
            return i;
        }
        r -= w;
    }
    weights.len() - 1
}

/// Collaboration-network stand-in: authors co-sign papers, every paper is a
/// clique of its authors. Large collaborations contribute dense triangle
/// mass; the long tail comes from small research groups with a recurring
/// senior author, single-paper satellite authors (their one edge is a
/// bridge), and a few prolific authors who publish across many groups.
fn build_collab(n: usize, m_target: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_C011AB);
    let mut b = Builder::new(n);
    let mut next: NodeId = 0;
    let take = |k: usize, next: &mut NodeId| -> Vec<NodeId> {
        let ids: Vec<NodeId> = (*next..*next + k as NodeId).collect();
        *next += k as NodeId;
        ids
    };

    // Big experimental collaborations: disjoint author blocks, one clique
    // each. Kept moderate so the dense triangle mass does not swamp the
    // group-level texture.
    let big_sizes = [40, 34, 30, 27, 25, 23, 22, 21, 21, 20, 19, 19];
    let mut big_members: Vec<NodeId> = Vec::new();
    for &s in &big_sizes {
        let members = take(s, &mut next);
        b.clique(&members);
        big_members.extend(&members);
    }

    // Research groups. Each group signs a stack of small papers; the first
    // member is the group lead and appears on most of them. A tier of large
    // groups gives the degree distribution its mid-range mass: their leads
    // end up knowing everyone while the members stay only partially
    // interconnected, which produces wide open-wedge fans.
    let large_sizes = [
        56, 38, 34, 31, 28, 26, 24, 22, 21, 20, 19, 18, 17, 16, 16, 15, 15, 14, 14, 13, 13, 12,
        12, 11, 11, 10, 10,
    ];
    let group_size_weights = [0.0, 0.0, 0.20, 0.24, 0.19, 0.13, 0.09, 0.06, 0.05, 0.04];
    let paper_size_weights = [0.0, 0.0, 0.48, 0.34, 0.13, 0.05];
    let satellites = 840usize;
    let bridgers = 180usize;
    let mut groups: Vec<Vec<NodeId>> = Vec::new();
    for &g in &large_sizes {
        groups.push(take(g, &mut next));
    }
    let group_pool = n - next as usize - satellites - bridgers;
    let mut used = 0usize;
    while used < group_pool {
        let mut g = weighted(&mut rng, &group_size_weights);
        g = g.min(group_pool - used);
        if g < 2 {
            // Fold a trailing remainder into the previous group.
            let ids = take(g, &mut next);
            groups.last_mut().expect("at least one group").extend(ids);
            used += g;
            continue;
        }
        groups.push(take(g, &mut next));
        used += g;
    }
    for group in &groups {
        let lead = group[0];
        let papers = (group.len() as f64 * 4.1).round() as usize;
        for _ in 0..papers.max(1) {
            let size = weighted(&mut rng, &paper_size_weights).min(group.len());
            let mut authors: Vec<NodeId> = Vec::with_capacity(size);
            if rng.random_bool(0.72) {
                authors.push(lead);
            }
            while authors.len() < size {
                let cand = group[rng.random_range(0..group.len())];
                if !authors.contains(&cand) {
                    authors.push(cand);
                }
            }
            b.clique(&authors);
        }
    }

    // The most senior large-group leads also co-sign papers across other
    // groups, pushing the top of the degree distribution toward the real
    // dataset's maximum without creating bridges.
    let stars = 3usize;
    for s in 0..stars {
        let star = groups[s][0];
        let visits = 6 + 2 * (stars - s);
        for _ in 0..visits {
            let host = &groups[rng.random_range(0..groups.len())];
            let want = (2 + rng.random_range(0..3)).min(host.len());
            let mut authors = vec![star];
            for _ in 0..50 {
                if authors.len() > want {
                    break;
                }
                let cand = host[rng.random_range(0..host.len())];
                if !authors.contains(&cand) {
                    authors.push(cand);
                }
            }
            b.clique(&authors);
        }
    }

    // Cross-group two-author papers between leads: joins most groups into a
    // giant component but leaves a fringe of isolated groups, like the
    // original. A link between otherwise disjoint groups is a bridge.
    let linked = (groups.len() as f64 * 0.50) as usize;
    for i in 1..linked {
        let a = groups[i][0];
        let t = rng.random_range(0..i);
        let c = groups[t][rng.random_range(0..groups[t].len())];
        b.add(a, c);
    }

    // Senior members of the big collaborations also advise small groups;
    // these single links add long open wedges around high-degree authors.
    for _ in 0..120 {
        let a = big_members[rng.random_range(0..big_members.len())];
        let host = &groups[rng.random_range(0..groups.len())];
        b.add(a, host[rng.random_range(0..host.len())]);
    }

    // Satellite authors: one two-author paper with a rank-and-file group
    // member. Each satellite's edge is a bridge.
    for _ in 0..satellites {
        let sat = take(1, &mut next)[0];
        let host = &groups[rng.random_range(0..groups.len())];
        let member = host[rng.random_range(0..host.len()).max(1).min(host.len() - 1)];
        b.add(sat, member);
    }

    // Bridging authors: people with exactly one paper in each of two
    // different groups. They sit on open wedges (clustering zero) without
    // creating bridges, since the groups they straddle are already joined
    // through the lead network.
    for _ in 0..bridgers {
        let a = take(1, &mut next)[0];
        let g1 = &groups[rng.random_range(0..linked)];
        let g2 = &groups[rng.random_range(0..linked)];
        b.add(a, g1[rng.random_range(0..g1.len())]);
        b.add(a, g2[rng.random_range(0..g2.len())]);
    }
    assert_eq!(next as usize, n, "author budget must be spent exactly");

    trim_or_pad(&mut b, m_target, &mut rng);
    b.into_graph()
}

/// Autonomous-system stand-in: a near-clique of backbone hubs, a provider
/// tier multi-homed into the backbone with peering links that close
/// triangles, and a large customer fringe. Single-homed customers make their
/// access link a bridge.
fn build_autonomous(n: usize, m_target: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0A51);
    let mut b = Builder::new(n);

    let tier1 = 16usize;
    let providers = 760usize;
    let hubs: Vec<NodeId> = (0..tier1 as NodeId).collect();
    for i in 0..tier1 {
        for j in i + 1..tier1 {
            if rng.random_bool(0.9) {
                b.add(hubs[i], hubs[j]);
            }
        }
    }

    // Providers multi-home into the backbone, preferring busy hubs.
    let mut hub_weight = vec![1.0f64; tier1];
    let provider_ids: Vec<NodeId> = (tier1 as NodeId..(tier1 + providers) as NodeId).collect();
    for &p in &provider_ids {
        let k = 1 + weighted(&mut rng, &[0.35, 0.45, 0.20]);
        let mut picked = 0usize;
        while picked < k {
            let h = hubs[weighted(&mut rng, &hub_weight)];
            if b.add(p, h) {
                picked += 1;
                hub_weight[h as usize] += 0.35;
            }
        }
    }

    // Dense core mesh among the senior providers: this is where most of the
    // triangle mass in an AS graph lives.
    let core = &provider_ids[..90];
    let mut made = 0usize;
    while made < 1450 {
        let u = core[rng.random_range(0..core.len())];
        let v = core[rng.random_range(0..core.len())];
        if b.add(u, v) {
            made += 1;
        }
    }

    // Wider provider peering, biased toward pairs that already share a
    // neighbor so the link closes a triangle.
    made = 0;
    while made < 3400 {
        let u = provider_ids[rng.random_range(0..providers)];
        let v = if rng.random_bool(0.8) {
            let peers = &b.adj[u as usize];
            let w = peers[rng.random_range(0..peers.len())];
            let two = &b.adj[w as usize];
            two[rng.random_range(0..two.len())]
        } else {
            provider_ids[rng.random_range(0..providers)]
        };
        if (tier1 as NodeId..(tier1 + providers) as NodeId).contains(&v) && b.add(u, v) {
            made += 1;
        }
    }

    // Customer fringe. Growth is preferential, seeded so a few backbone hubs
    // soak up customers and stretch the maximum degree into the thousands.
    // Multi-homed customers often pick their second uplink adjacent to the
    // first, closing a triangle through the customer.
    let first_customer = tier1 + providers;
    let mut attach: Vec<NodeId> = Vec::new();
    attach.extend(std::iter::repeat_n(hubs[0], 1150));
    attach.extend(std::iter::repeat_n(hubs[1], 150));
    attach.extend(std::iter::repeat_n(hubs[2], 100));
    for &h in &hubs[3..] {
        attach.extend(std::iter::repeat_n(h, 25));
    }
    for &p in &provider_ids {
        attach.extend(std::iter::repeat_n(p, 3));
    }
    for c in first_customer as NodeId..n as NodeId {
        let a = attach[rng.random_range(0..attach.len())];
        b.add(c, a);
        attach.push(a);
        if rng.random_bool(0.555) {
            let second = if rng.random_bool(0.53) {
                let peers = &b.adj[a as usize];
                peers[rng.random_range(0..peers.len())]
            } else {
                attach[rng.random_range(0..attach.len())]
            };
            if b.add(c, second) {
                attach.push(second);
            }
        }
        attach.push(c);
    }

    trim_or_pad(&mut b, m_target, &mut rng);
    b.into_graph()
}

/// Nudge the edge count to the exact published value. Padding closes wedges
/// centered on random nodes (adds triangles, no bridges); trimming removes
/// edges whose endpoints keep degree >= 3, which leaves leaves and bridges
/// alone.
fn trim_or_pad(b: &mut Builder, m_target: usize, rng: &mut ChaCha8Rng) {
    let n = b.n as NodeId;
    eprintln!("  construction: {} edges for target {m_target}", b.len());
    let mut guard = 0usize;
    while b.len() < m_target {
        guard += 1;
        assert!(guard < 10_000_000, "padding failed to converge");
        let w = rng.random_range(0..n);
        if b.degree(w) < 2 {
            continue;
        }
        let arms = &b.adj[w as usize];
        let u = arms[rng.random_range(0..arms.len())];
        let v = arms[rng.random_range(0..arms.len())];
        // Leave leaves alone so padding cannot erase bridges.
        if b.degree(u) >= 2 && b.degree(v) >= 2 {
            b.add(u, v);
        }
    }
    if b.len() > m_target {
        // Among a sample of removable edges, drop the one participating in
        // the fewest triangles so trimming spends redundant links, not
        // clique interiors.
        let mut keys: Vec<u64> = b.edges.iter().copied().collect();
        keys.sort_unstable();
        keys.shuffle(rng);
        let mut cursor = 0usize;
        while b.len() > m_target {
            let mut best: Option<(u64, usize)> = None;
            let mut seen = 0usize;
            while seen < 12 && cursor < keys.len() {
                let k = keys[cursor];
                cursor += 1;
                if !b.edges.contains(&k) {
                    continue;
                }
                let (u, v) = ((k >> 32) as NodeId, (k & 0xffff_ffff) as NodeId);
                if b.degree(u) < 3 || b.degree(v) < 3 {
                    continue;
                }
                seen += 1;
                let tri = b.adj[u as usize]
                    .iter()
                    .filter(|x| b.adj[v as usize].contains(x))
                    .count();
                if best.is_none_or(|(_, t)| tri < t) {
                    best = Some((k, tri));
                }
            }
            let (k, _) = best.expect("ran out of removable edges");
            let (u, v) = ((k >> 32) as NodeId, (k & 0xffff_ffff) as NodeId);
            b.edges.remove(&k);
            b.adj[u as usize].retain(|&x| x != v);
            b.adj[v as usize].retain(|&x| x != u);
        }
    }
    assert_eq!(b.len(), m_target, "could not reach exact edge target");
}

fn describe(name: &str, g: &Graph) {
    {
        let mut top: Vec<u32> = g.degrees();
        top.sort_unstable_by(|a, b| b.cmp(a));
        eprintln!("  top degrees: {:?}", &top[..8.min(top.len())]);
    }
    let tri = synthnet::metrics::triangle_total(g);
    let triples = synthnet::metrics::triple_total(g);
    let global = synthnet::metrics::global_cc(g);
    let avg = synthnet::metrics::avg_cc(g);
    let eb = synthnet::metrics::bridge_count(g);
    let degrees = g.degrees();
    let dmax = degrees.iter().copied().max().unwrap_or(0);
    let deg1 = degrees.iter().filter(|&&d| d == 1).count();
    let (_, comps) = g.connected_components();
    println!(
        "{name}: n={} m={} tri={tri} triples={triples} global_cc={global:.4} avg_cc={avg:.4} \
         eb={eb} dmax={dmax} deg1={deg1} components={comps}",
        g.node_count(),
        g.edge_count(),
    );
}

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");

    let collab = build_collab(5242, 14496);
    describe("ca-grqc-like", &collab);
    synthnet::save_graph(&root.join("ca-grqc-like.txt"), &collab, "ca-grqc-like", &[])
        .expect("write collab fixture");

    let autonomous = build_autonomous(10886, 22493);
    describe("oregon010428-like", &autonomous);
    synthnet::save_graph(
        &root.join("oregon010428-like.txt"),
        &autonomous,
        "oregon010428-like",
        &[],
    )
    .expect("write autonomous fixture");
}
