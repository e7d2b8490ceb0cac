//! Simple undirected graphs.
//!
//! Just enough graph machinery for the shipped adapters: validated
//! construction from an edge list, sorted adjacency, and induced-subgraph
//! queries phrased over vertex subsets.

use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting out-of-range endpoints, self-loops and
    /// duplicate edges. Stored edges are normalized to `u < v`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut norm: Vec<(usize, usize)> = Vec::new();
        for (idx, (a, b)) in edges.into_iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!(
                    "edges[{idx}] = ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidInput(format!(
                    "edges[{idx}] = ({a}, {b}) is a self-loop"
                )));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: norm,
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, []).expect("empty edge list is valid")
    }

    /// Path 0-1-...-(n-1).
    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete edges are valid")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are valid")
    }

    /// Complete multipartite graph: all edges between distinct parts, none
    /// within a part. Vertices are numbered part by part.
    pub fn complete_multipartite(part_sizes: &[usize]) -> Self {
        let n: usize = part_sizes.iter().sum();
        let mut part_of = Vec::with_capacity(n);
        for (p, &s) in part_sizes.iter().enumerate() {
            part_of.extend(std::iter::repeat(p).take(s));
        }
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| part_of[u] != part_of[v])
            .collect::<Vec<_>>();
        Graph::new(n, edges).expect("multipartite edges are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbors of `u`.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Number of edges with both endpoints in `subset` (order-insensitive,
    /// duplicates in `subset` are ignored).
    pub fn edge_count_within(&self, subset: &[usize]) -> usize {
        let mut inside = vec![false; self.n];
        for &x in subset {
            inside[x] = true;
        }
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for &x in subset {
            if seen[x] {
                continue;
            }
            seen[x] = true;
            // Each edge is counted at its smaller endpoint.
            for &w in &self.adj[x] {
                if w > x && inside[w] {
                    count += 1;
                }
            }
        }
        count
    }

    /// True iff the subgraph induced by `subset` has no edges.
    pub fn induces_edgeless(&self, subset: &[usize]) -> bool {
        self.edge_count_within(subset) == 0
    }

    /// True iff `subset` induces a complete subgraph.
    pub fn induces_clique(&self, subset: &[usize]) -> bool {
        let s = subset.len();
        self.edge_count_within(subset) == s * (s.saturating_sub(1)) / 2
    }
}
