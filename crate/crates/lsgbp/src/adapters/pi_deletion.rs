//! Vertex deletion into c components with a hereditary property: keep c
//! groups whose induced subgraphs each satisfy the property, delete the
//! rest. The deletion bin is the last one and costs one per vertex; a
//! property bin that violates the property makes the partition worthless.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::Instance;
use crate::partition::BPartition;
use crate::scalar::Scalar;
use crate::typing::neighborhood_classes;
use crate::value::{AggOp, AggSpec, Direction, ExtValue};

use super::max_c_cut::check_coloring;

/// Graph property required of each kept group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiPredicate {
    /// The induced subgraph has no edges.
    Edgeless,
    /// The induced subgraph is a complete graph.
    Clique,
}

impl PiPredicate {
    pub fn holds(&self, graph: &Graph, subset: &[usize]) -> bool {
        match self {
            PiPredicate::Edgeless => graph.induces_edgeless(subset),
            PiPredicate::Clique => graph.induces_clique(subset),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            PiPredicate::Edgeless => "edgeless",
            PiPredicate::Clique => "clique",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PiDeletion {
    graph: Graph,
    components: usize,
    pi: PiPredicate,
}

impl PiDeletion {
    /// `components` is the number of kept groups; the deletion bin is
    /// added on top of them.
    pub fn new(graph: Graph, components: usize, pi: PiPredicate) -> Result<Self> {
        if components == 0 {
            return Err(Error::InvalidInput(
                "pi deletion needs at least one kept component".into(),
            ));
        }
        Ok(PiDeletion {
            graph,
            components,
            pi,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn pi(&self) -> PiPredicate {
        self.pi
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn bins(&self) -> usize {
        self.components + 1
    }

    pub fn build<T: Scalar>(&self) -> Instance<T> {
        let g = self.graph.clone();
        let c = self.components;
        let pi = self.pi;
        let types = neighborhood_classes(&g);
        Instance::new(
            g.n(),
            c + 1,
            AggSpec::new(AggOp::Sum, Direction::Minimize),
            types,
            move |bin, members| {
                if bin <= c {
                    if pi.holds(&g, members) {
                        ExtValue::Finite(T::zero())
                    } else {
                        ExtValue::Worst
                    }
                } else {
                    ExtValue::Finite(T::from(members.len() as i64))
                }
            },
        )
        .expect("adapter dimensions are consistent")
    }

    /// Recomputes the deletion count, checking every kept group.
    pub fn crosscheck<T: Scalar>(&self, f: &BPartition) -> Result<ExtValue<T>> {
        check_coloring(self.n(), self.bins(), f)?;
        let groups = f.preimages();
        for group in groups.iter().take(self.components) {
            if !self.pi.holds(&self.graph, group) {
                return Ok(ExtValue::Worst);
            }
        }
        Ok(ExtValue::Finite(T::from(
            groups[self.components].len() as i64
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deleting_the_path_middle_leaves_edgeless_sides() {
        let p = PiDeletion::new(Graph::path(3), 1, PiPredicate::Edgeless).unwrap();
        let inst = p.build::<i64>();
        // Keep the endpoints, delete the middle vertex.
        let f = BPartition::new(vec![1, 2, 1], 2).unwrap();
        assert_eq!(inst.target_value(&f).unwrap(), ExtValue::Finite(1));
        assert_eq!(p.crosscheck::<i64>(&f).unwrap(), ExtValue::Finite(1));
        // Keeping everything violates edgelessness.
        let all = BPartition::constant(3, 2).unwrap();
        assert_eq!(inst.target_value(&all).unwrap(), ExtValue::Worst);
        assert_eq!(p.crosscheck::<i64>(&all).unwrap(), ExtValue::Worst);
    }

    #[test]
    fn clique_mode_keeps_complete_groups() {
        let p = PiDeletion::new(Graph::complete(3), 1, PiPredicate::Clique).unwrap();
        let inst = p.build::<i64>();
        let all_kept = BPartition::constant(3, 2).unwrap();
        assert_eq!(inst.target_value(&all_kept).unwrap(), ExtValue::Finite(0));
        // A path is not a clique when all three vertices are kept.
        let q = PiDeletion::new(Graph::path(3), 1, PiPredicate::Clique).unwrap();
        let inst = q.build::<i64>();
        assert_eq!(inst.target_value(&all_kept).unwrap(), ExtValue::Worst);
    }

    #[test]
    fn empty_groups_satisfy_both_predicates() {
        let g = Graph::path(2);
        assert!(PiPredicate::Edgeless.holds(&g, &[]));
        assert!(PiPredicate::Clique.holds(&g, &[]));
    }

    #[test]
    fn rejects_zero_components() {
        assert!(PiDeletion::new(Graph::empty(1), 0, PiPredicate::Edgeless).is_err());
    }
}
