//! Max c-Cut, phrased as fault minimization: color the vertices with `c`
//! colors so that as few edges as possible are monochromatic. Each color
//! class is a bin whose evaluator counts its internal edges; maximizing
//! the cut is exactly minimizing that sum.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::Instance;
use crate::partition::BPartition;
use crate::scalar::Scalar;
use crate::typing::neighborhood_classes;
use crate::value::{AggOp, AggSpec, Direction, ExtValue};

#[derive(Clone, Debug)]
pub struct MaxCCut {
    graph: Graph,
    colors: usize,
}

impl MaxCCut {
    pub fn new(graph: Graph, colors: usize) -> Result<Self> {
        if colors == 0 {
            return Err(Error::InvalidInput("c must be at least 1".into()));
        }
        Ok(MaxCCut { graph, colors })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn bins(&self) -> usize {
        self.colors
    }

    /// Vertices with identical neighborhoods are interchangeable for every
    /// internal-edge count, so twin classes serve as the type partition.
    pub fn build<T: Scalar>(&self) -> Instance<T> {
        let g = self.graph.clone();
        let types = neighborhood_classes(&g);
        Instance::new(
            g.n(),
            self.colors,
            AggSpec::new(AggOp::Sum, Direction::Minimize),
            types,
            move |_, members| ExtValue::Finite(T::from(g.edge_count_within(members) as i64)),
        )
        .expect("adapter dimensions are consistent")
    }

    /// Fault count straight off the edge list.
    pub fn crosscheck<T: Scalar>(&self, f: &BPartition) -> Result<ExtValue<T>> {
        check_coloring(self.n(), self.colors, f)?;
        let faults = self
            .graph
            .edges()
            .iter()
            .filter(|&&(u, v)| f.bin_of(u) == f.bin_of(v))
            .count();
        Ok(ExtValue::Finite(T::from(faults as i64)))
    }
}

pub(super) fn check_coloring(n: usize, bins: usize, f: &BPartition) -> Result<()> {
    if f.n() != n || f.bins() != bins {
        return Err(Error::DimensionMismatch(format!(
            "partition over n={}, b={} against problem n={n}, b={bins}",
            f.n(),
            f.bins()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monochromatic_path_has_two_faults() {
        let p = MaxCCut::new(Graph::path(3), 2).unwrap();
        let inst = p.build::<i64>();
        let f = BPartition::constant(3, 2).unwrap();
        assert_eq!(inst.target_value(&f).unwrap(), ExtValue::Finite(2));
        assert_eq!(p.crosscheck::<i64>(&f).unwrap(), ExtValue::Finite(2));
    }

    #[test]
    fn balanced_k4_has_two_faults() {
        let p = MaxCCut::new(Graph::complete(4), 2).unwrap();
        let f = BPartition::new(vec![1, 1, 2, 2], 2).unwrap();
        assert_eq!(p.crosscheck::<i64>(&f).unwrap(), ExtValue::Finite(2));
        let inst = p.build::<i64>();
        assert_eq!(inst.target_value(&f).unwrap(), ExtValue::Finite(2));
    }

    #[test]
    fn crosscheck_rejects_wrong_shape() {
        let p = MaxCCut::new(Graph::path(3), 2).unwrap();
        let f = BPartition::constant(4, 2).unwrap();
        assert!(p.crosscheck::<i64>(&f).is_err());
    }
}
