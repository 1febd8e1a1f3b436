//! Simple undirected graph with O(1) edge membership tests.
//!
//! Nodes are dense `u32` ids in `0..n`. Self-loops and parallel edges are
//! rejected at insertion, so every stored graph is simple by construction.
//! The structure is append-only: once built it can be shared freely across
//! threads for read-side work.

use crate::error::Error;
use crate::Result;
use hashbrown::HashSet;

pub type NodeId = u32;

/// Packs an unordered node pair into a single key with the smaller id in the
/// high half, so `(u, v)` and `(v, u)` collide.
#[inline]
fn edge_key(u: NodeId, v: NodeId) -> u64 {
    let (a, b) = if u <= v { (u, v) } else { (v, u) };
    ((a as u64) << 32) | b as u64
}

#[derive(Debug, Clone)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edges: HashSet<u64>,
}

impl Graph {
    /// Creates an edgeless graph on `n` nodes.
    pub fn new(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edges: HashSet::new(),
        }
    }

    /// Builds a graph from an edge list; convenience for tests and fixtures.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    fn check(&self, v: NodeId) -> Result<()> {
        if (v as usize) < self.adjacency.len() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                id: v as u64,
                nodes: self.adjacency.len(),
            })
        }
    }

    /// Inserts the undirected edge `{u, v}`. Returns `true` if the edge is
    /// new, `false` if it already existed or is a self-loop.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Ok(false);
        }
        if !self.edges.insert(edge_key(u, v)) {
            return Ok(false);
        }
        self.adjacency[u as usize].push(v);
        self.adjacency[v as usize].push(u);
        Ok(true)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.contains(u, v))
    }

    /// Unchecked membership test for hot paths with ids known to be valid.
    #[inline]
    pub(crate) fn contains(&self, u: NodeId, v: NodeId) -> bool {
        u != v && self.edges.contains(&edge_key(u, v))
    }

    pub fn degree(&self, v: NodeId) -> Result<usize> {
        self.check(v)?;
        Ok(self.adjacency[v as usize].len())
    }

    pub fn neighbors(&self, v: NodeId) -> Result<&[NodeId]> {
        self.check(v)?;
        Ok(&self.adjacency[v as usize])
    }

    /// Read-only view of all adjacency lists, indexed by node id.
    pub fn adjacency(&self) -> &[Vec<NodeId>] {
        &self.adjacency
    }

    /// Iterates every edge once with `u < v`, in unspecified order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.edges
            .iter()
            .map(|&k| ((k >> 32) as NodeId, (k & 0xffff_ffff) as NodeId))
    }

    /// Edge list sorted ascending by `(u, v)`; the canonical order used when
    /// writing graphs to disk.
    pub fn sorted_edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out: Vec<_> = self.edges().collect();
        out.sort_unstable();
        out
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.adjacency.iter().map(|a| a.len() as u32).collect()
    }

    /// Labels each node with a component id in `0..k` (ids assigned in order
    /// of the lowest node in each component) and returns `(labels, k)`.
    pub fn connected_components(&self) -> (Vec<u32>, usize) {
        let n = self.node_count();
        let mut label = vec![u32::MAX; n];
        let mut next = 0u32;
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n {
            if label[start] != u32::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start as NodeId);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v as usize] {
                    if label[w as usize] == u32::MAX {
                        label[w as usize] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        (label, next as usize)
    }
}
