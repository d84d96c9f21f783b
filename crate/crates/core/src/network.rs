//! Delay-weighted communication networks.
//!
//! A [`DelayGraph`] is a connected, undirected graph over locations `0..n`
//! whose edges carry non-negative integer delays measured in rounds. The
//! propagation distance between two locations is the minimum over paths of
//! the summed edge delays, and the diameter is the largest such distance.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense 0-based location identifier.
pub type NodeId = usize;

/// Edge or path delay in rounds.
pub type Delay = u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("graph is disconnected: node {node} is unreachable from node 0")]
    Disconnected { node: NodeId },
    #[error("self-loop on node {node}")]
    SelfLoop { node: NodeId },
    #[error("duplicate edge between {u} and {v}")]
    DuplicateEdge { u: NodeId, v: NodeId },
    #[error("node id {id} out of range for {node_count} nodes")]
    BadNodeId { id: NodeId, node_count: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("line {line}: {message}")]
    ParseEdgeList { line: usize, message: String },
}

/// Undirected delay-weighted edge, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub delay: Delay,
}

/// Validated connected undirected graph with non-negative integer delays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelayGraph {
    node_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(NodeId, Delay)>>,
}

impl DelayGraph {
    /// Builds and validates a graph from an edge list.
    ///
    /// Rejects out-of-range node ids, self-loops, duplicate unordered pairs
    /// and disconnected graphs, naming the offending element.
    pub fn new(
        node_count: usize,
        edges: impl IntoIterator<Item = (NodeId, NodeId, Delay)>,
    ) -> Result<Self, NetworkError> {
        if node_count == 0 {
            return Err(NetworkError::BadParameter(
                "node count must be at least 1".into(),
            ));
        }
        let mut seen = HashSet::new();
        let mut canonical = Vec::new();
        for (u, v, delay) in edges {
            for id in [u, v] {
                if id >= node_count {
                    return Err(NetworkError::BadNodeId { id, node_count });
                }
            }
            if u == v {
                return Err(NetworkError::SelfLoop { node: u });
            }
            let (lo, hi) = if u < v { (u, v) } else { (v, u) };
            if !seen.insert((lo, hi)) {
                return Err(NetworkError::DuplicateEdge { u: lo, v: hi });
            }
            canonical.push(Edge {
                u: lo,
                v: hi,
                delay,
            });
        }
        canonical.sort_by_key(|e| (e.u, e.v));

        let mut adjacency = vec![Vec::new(); node_count];
        for e in &canonical {
            adjacency[e.u].push((e.v, e.delay));
            adjacency[e.v].push((e.u, e.delay));
        }

        // Connectivity is about reachability only; delays play no role here.
        let mut visited = vec![false; node_count];
        let mut stack = vec![0];
        visited[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adjacency[u] {
                if !visited[v] {
                    visited[v] = true;
                    stack.push(v);
                }
            }
        }
        if let Some(node) = visited.iter().position(|&ok| !ok) {
            return Err(NetworkError::Disconnected { node });
        }

        Ok(DelayGraph {
            node_count,
            edges: canonical,
            adjacency,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, node: NodeId) -> &[(NodeId, Delay)] {
        &self.adjacency[node]
    }

    /// Shortest-path delays from one source (Dijkstra; zero delays allowed).
    pub fn distances_from(&self, source: NodeId) -> Vec<Delay> {
        assert!(source < self.node_count, "source {source} out of range");
        let mut dist = vec![Delay::MAX; self.node_count];
        let mut heap = BinaryHeap::new();
        dist[source] = 0;
        heap.push(Reverse((0u64, source)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, w) in &self.adjacency[u] {
                let next = d.saturating_add(w);
                if next < dist[v] {
                    dist[v] = next;
                    heap.push(Reverse((next, v)));
                }
            }
        }
        dist
    }

    /// Exact all-pairs propagation distances.
    pub fn all_pairs_delay(&self) -> DelayMatrix {
        let n = self.node_count;
        let mut dist = Vec::with_capacity(n * n);
        for source in 0..n {
            dist.extend(self.distances_from(source));
        }
        DelayMatrix { n, dist }
    }

    /// Largest propagation distance, computed without storing the full matrix.
    pub fn diameter(&self) -> Delay {
        (0..self.node_count)
            .flat_map(|source| self.distances_from(source))
            .max()
            .unwrap_or(0)
    }

    /// Parses the edge-list text format: one `u v delay` triple per line,
    /// whitespace separated, `#` lines ignored, node count = max id + 1.
    pub fn parse_edge_list(text: &str) -> Result<Self, NetworkError> {
        let mut edges = Vec::new();
        let mut max_id = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = trimmed.split_whitespace();
            let mut next_int = |name: &str| -> Result<u64, NetworkError> {
                let field = fields.next().ok_or_else(|| NetworkError::ParseEdgeList {
                    line,
                    message: format!("missing {name}"),
                })?;
                field.parse().map_err(|_| NetworkError::ParseEdgeList {
                    line,
                    message: format!("{name} `{field}` is not a non-negative integer"),
                })
            };
            let u = next_int("node id")? as NodeId;
            let v = next_int("node id")? as NodeId;
            let delay = next_int("delay")?;
            if let Some(extra) = fields.next() {
                return Err(NetworkError::ParseEdgeList {
                    line,
                    message: format!("unexpected trailing field `{extra}`"),
                });
            }
            max_id = Some(max_id.unwrap_or(0).max(u).max(v));
            edges.push((u, v, delay));
        }
        let Some(max_id) = max_id else {
            return Err(NetworkError::BadParameter(
                "edge list contains no edges".into(),
            ));
        };
        DelayGraph::new(max_id + 1, edges)
    }

    /// Serializes to the edge-list text format accepted by `parse_edge_list`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e.u, e.v, e.delay));
        }
        out
    }
}

/// Exact all-pairs propagation-distance table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelayMatrix {
    n: usize,
    dist: Vec<Delay>,
}

impl DelayMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, i: NodeId, j: NodeId) -> Delay {
        self.dist[i * self.n + j]
    }

    pub fn row(&self, i: NodeId) -> &[Delay] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    /// Maximum distance over all pairs; 0 for a single-node graph.
    pub fn diameter(&self) -> Delay {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    /// Distance histogram over unordered pairs `i < j`.
    pub fn histogram(&self) -> BTreeMap<Delay, u64> {
        let mut hist = BTreeMap::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                *hist.entry(self.dist(i, j)).or_insert(0) += 1;
            }
        }
        hist
    }
}

/// Named topology families for graph generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Topology {
    Path(usize),
    Cycle(usize),
    Star(usize),
    Complete(usize),
    BarabasiAlbert {
        nodes: usize,
        attach: usize,
        seed: u64,
    },
}

impl Topology {
    /// Generates the topology with every edge delay set to `uniform_delay`.
    ///
    /// Barabási–Albert generation starts from a complete graph on
    /// `attach + 1` nodes; each new node attaches to `attach` distinct
    /// existing nodes drawn with probability proportional to current degree,
    /// re-drawing duplicate targets. Deterministic for a given seed.
    pub fn generate(&self, uniform_delay: Delay) -> Result<DelayGraph, NetworkError> {
        match *self {
            Topology::Path(n) => {
                require(n >= 1, "path requires n >= 1")?;
                DelayGraph::new(n, (1..n).map(|v| (v - 1, v, uniform_delay)))
            }
            Topology::Cycle(n) => {
                require(n >= 3, "cycle requires n >= 3")?;
                let edges = (1..n)
                    .map(|v| (v - 1, v, uniform_delay))
                    .chain(std::iter::once((n - 1, 0, uniform_delay)));
                DelayGraph::new(n, edges)
            }
            Topology::Star(n) => {
                require(n >= 1, "star requires n >= 1")?;
                DelayGraph::new(n, (1..n).map(|v| (0, v, uniform_delay)))
            }
            Topology::Complete(n) => {
                require(n >= 1, "complete requires n >= 1")?;
                let edges = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v, uniform_delay)));
                DelayGraph::new(n, edges)
            }
            Topology::BarabasiAlbert {
                nodes,
                attach,
                seed,
            } => {
                require(attach >= 1, "barabasi_albert requires m_attach >= 1")?;
                require(attach < nodes, "barabasi_albert requires m_attach < n")?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let core = attach + 1;
                let mut edges = Vec::new();
                // Endpoint pool: each node appears once per incident edge, so
                // a uniform draw is degree-proportional.
                let mut pool = Vec::new();
                for u in 0..core {
                    for v in (u + 1)..core {
                        edges.push((u, v, uniform_delay));
                        pool.push(u);
                        pool.push(v);
                    }
                }
                for new in core..nodes {
                    let mut targets = std::collections::BTreeSet::new();
                    while targets.len() < attach {
                        let pick = pool[rng.gen_range(0..pool.len())];
                        targets.insert(pick);
                    }
                    for &t in &targets {
                        edges.push((t, new, uniform_delay));
                        pool.push(t);
                        pool.push(new);
                    }
                }
                DelayGraph::new(nodes, edges)
            }
        }
    }
}

fn require(ok: bool, message: &str) -> Result<(), NetworkError> {
    if ok {
        Ok(())
    } else {
        Err(NetworkError::BadParameter(message.into()))
    }
}
