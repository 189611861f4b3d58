use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::model::{DistributionSpec, Hypothesis, ImprovementMap};
use crate::scalar::Scalar;

/// Graph together with the target labeling of its nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphInstance {
    pub graph: Arc<Graph>,
    pub f_star: Vec<bool>,
}

/// Degree statistics that drive the sample-size bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageStats {
    /// Minimum degree inside the subgraph induced by the positive nodes
    /// (0 when there are none).
    pub d_min_plus: usize,
    /// Minimum number of positive neighbours over negative nodes that have
    /// at least one; `None` stands for +infinity (no such node).
    pub d_min_n: Option<usize>,
    pub n_plus: usize,
}

impl GraphInstance {
    pub fn new(graph: Arc<Graph>, f_star: Vec<bool>) -> Result<Self> {
        if f_star.len() != graph.n() {
            return Err(Error::LengthMismatch { left: graph.n(), right: f_star.len() });
        }
        Ok(GraphInstance { graph, f_star })
    }

    pub fn all_positive(graph: Graph) -> Self {
        let n = graph.n();
        GraphInstance { graph: Arc::new(graph), f_star: vec![true; n] }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn positives(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.f_star[i]).collect()
    }

    pub fn target<T: Scalar>(&self) -> Hypothesis<T> {
        Hypothesis::FiniteLabeling(self.f_star.clone())
    }

    /// Neighbourhood improvement map of radius `rho`.
    pub fn delta<T: Scalar>(&self, rho: usize) -> ImprovementMap<T> {
        ImprovementMap::graph(self.graph.clone(), rho)
    }

    pub fn uniform<T: Scalar>(&self) -> DistributionSpec<T> {
        DistributionSpec::UniformNodes { n: self.n() }
    }

    fn positive_neighbors(&self, u: usize) -> usize {
        self.graph.neighbors(u).iter().filter(|&&v| self.f_star[v]).count()
    }

    /// Negative nodes with at least one positive neighbour.
    pub fn boundary_negatives(&self) -> Vec<usize> {
        (0..self.n()).filter(|&u| !self.f_star[u] && self.positive_neighbors(u) > 0).collect()
    }

    pub fn stats(&self) -> CoverageStats {
        let pos = self.positives();
        let d_min_plus = pos.iter().map(|&u| self.positive_neighbors(u)).min().unwrap_or(0);
        let d_min_n = self.boundary_negatives().iter().map(|&u| self.positive_neighbors(u)).min();
        CoverageStats { d_min_plus, d_min_n, n_plus: pos.len() }
    }
}

/// `rho`-th power: `u ~ v` iff their shortest-path distance is in `1..=rho`.
pub fn graph_power(g: &Graph, rho: usize) -> Result<Graph> {
    if rho == 0 {
        return Err(Error::Argument("graph power needs rho >= 1".into()));
    }
    let mut edges = Vec::new();
    for u in 0..g.n() {
        let dist = g.distances_from(u);
        // Unreachable nodes sit at n + 1, which a large rho would otherwise admit.
        let within = |d: usize| d >= 1 && d <= rho && d < g.n();
        edges.extend((u + 1..g.n()).filter(|&v| within(dist[v])).map(|v| (u, v)));
    }
    Graph::new(g.n(), edges)
}
