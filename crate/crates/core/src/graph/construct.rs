use std::sync::Arc;

use super::{Graph, GraphInstance};
use crate::error::{Error, Result};

/// `k` disjoint cliques of size `n / k`.
pub fn make_clique_lower_bound(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::Argument(format!("k = {k} must divide n = {n}")));
    }
    let size = n / k;
    let mut edges = Vec::new();
    for c in 0..k {
        let base = c * size;
        for i in 0..size {
            for j in i + 1..size {
                edges.push((base + i, base + j));
            }
        }
    }
    Graph::new(n, edges)
}

/// Wiring inside each private neighbour group of the star construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GroupWiring {
    /// Groups are cliques, so positive nodes cover each other.
    #[default]
    Clique,
    /// Groups are independent sets.
    Independent,
}

/// `k` negative hubs (nodes `0..k`), each joined to a private group of
/// `(n - k) / k` nodes. Group nodes are labelled positive.
pub fn make_star_partition_lower_bound(n: usize, k: usize, wiring: GroupWiring) -> Result<GraphInstance> {
    if k == 0 || k >= n || !(n - k).is_multiple_of(k) {
        return Err(Error::Argument(format!("need 0 < k < n and k | n - k (n = {n}, k = {k})")));
    }
    let size = (n - k) / k;
    let mut edges = Vec::new();
    for hub in 0..k {
        let base = k + hub * size;
        for i in 0..size {
            edges.push((hub, base + i));
            if wiring == GroupWiring::Clique {
                for j in i + 1..size {
                    edges.push((base + i, base + j));
                }
            }
        }
    }
    let graph = Graph::new(n, edges)?;
    let f_star = (0..n).map(|u| u >= k).collect();
    GraphInstance::new(Arc::new(graph), f_star)
}
