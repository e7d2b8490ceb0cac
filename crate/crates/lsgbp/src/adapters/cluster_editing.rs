//! Cluster editing as a partition objective: a clustering scores, per
//! cluster, its internal edges minus its internal non-edges. Maximizing
//! the total is equivalent to minimizing the number of edge edits needed
//! to turn the graph into exactly those disjoint cliques.
//!
//! Every vertex gets its own potential cluster (`b = n`), so any
//! clustering of the vertex set is expressible.

use crate::error::Result;
use crate::graph::Graph;
use crate::instance::Instance;
use crate::partition::BPartition;
use crate::scalar::Scalar;
use crate::typing::neighborhood_classes;
use crate::value::{AggOp, AggSpec, Direction, ExtValue};

use super::max_c_cut::check_coloring;

#[derive(Clone, Debug)]
pub struct ClusterEditing {
    graph: Graph,
}

impl ClusterEditing {
    pub fn new(graph: Graph) -> Self {
        ClusterEditing { graph }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn bins(&self) -> usize {
        self.graph.n()
    }

    pub fn build<T: Scalar>(&self) -> Instance<T> {
        let g = self.graph.clone();
        let types = neighborhood_classes(&g);
        Instance::new(
            g.n(),
            g.n(),
            AggSpec::new(AggOp::Sum, Direction::Maximize),
            types,
            move |_, members| ExtValue::Finite(T::from(cluster_score(&g, members))),
        )
        .expect("adapter dimensions are consistent")
    }

    /// Recomputes the score by walking each cluster directly.
    pub fn crosscheck<T: Scalar>(&self, f: &BPartition) -> Result<ExtValue<T>> {
        check_coloring(self.n(), self.bins(), f)?;
        let mut total: i64 = 0;
        for members in f.preimages() {
            total += cluster_score(&self.graph, &members);
        }
        Ok(ExtValue::Finite(T::from(total)))
    }
}

/// Internal edges minus internal non-edges; the empty cluster scores 0.
fn cluster_score(g: &Graph, members: &[usize]) -> i64 {
    let s = members.len() as i64;
    let edges = g.edge_count_within(members) as i64;
    let pairs = s * (s - 1) / 2;
    2 * edges - pairs
}
