use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph on nodes `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are merged;
    /// self-loops and out-of-range ids are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Argument(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::Argument(format!("self-loop at node {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        Ok(Graph { n, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn n_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, a)| a.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Shortest-path distances from `src`; unreachable nodes get `n + 1`.
    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        let sentinel = self.n + 1;
        let mut dist = vec![sentinel; self.n];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == sentinel {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Nodes at distance `1..=rho` from `u`, sorted.
    pub fn within(&self, u: usize, rho: usize) -> Vec<usize> {
        if rho == 1 {
            return self.adj[u].clone();
        }
        let mut seen = vec![false; self.n];
        seen[u] = true;
        let mut frontier = vec![u];
        let mut out = Vec::new();
        for _ in 0..rho {
            let mut next = Vec::new();
            for &a in &frontier {
                for &b in &self.adj[a] {
                    if !seen[b] {
                        seen[b] = true;
                        next.push(b);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend_from_slice(&next);
            frontier = next;
        }
        out.sort_unstable();
        out
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in the
    /// order given. Returns the graph and the map back to original ids.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &u) in keep.iter().enumerate() {
            index[u] = i;
        }
        let adj = keep
            .iter()
            .map(|&u| {
                let mut a: Vec<usize> =
                    self.adj[u].iter().filter_map(|&v| (index[v] != usize::MAX).then_some(index[v])).collect();
                a.sort_unstable();
                a
            })
            .collect();
        (Graph { n: keep.len(), adj }, keep.to_vec())
    }
}
