//! Vector bin packing with soft capacities: each bin has its own weight
//! vector, and a bin pays, per dimension, the amount by which its load
//! exceeds that weight. The objective is the total overshoot, minimized;
//! a packing is feasible exactly when the total is zero.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::partition::BPartition;
use crate::scalar::Scalar;
use crate::typing::dedup_partition;
use crate::value::{AggOp, AggSpec, Direction, ExtValue};

use super::max_c_cut::check_coloring;

#[derive(Clone, Debug)]
pub struct VectorBinPacking {
    vectors: Vec<Vec<i64>>,
    bin_weights: Vec<Vec<i64>>,
    dim: usize,
}

impl VectorBinPacking {
    /// `vectors[x]` is item x's demand, `bin_weights[i]` is bin i+1's
    /// capacity; all rows must have the same dimension and entries >= 0.
    pub fn new(vectors: Vec<Vec<i64>>, bin_weights: Vec<Vec<i64>>) -> Result<Self> {
        if bin_weights.is_empty() {
            return Err(Error::InvalidInput(
                "vector bin packing needs at least one bin".into(),
            ));
        }
        let dim = bin_weights[0].len();
        for (i, row) in bin_weights.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "bin_weights[{}] has dimension {}, expected {}",
                    i,
                    row.len(),
                    dim
                )));
            }
            if let Some(j) = row.iter().position(|&w| w < 0) {
                return Err(Error::InvalidInput(format!(
                    "bin_weights[{}][{}] is negative",
                    i, j
                )));
            }
        }
        for (x, row) in vectors.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "vectors[{}] has dimension {}, expected {}",
                    x,
                    row.len(),
                    dim
                )));
            }
            if let Some(j) = row.iter().position(|&v| v < 0) {
                return Err(Error::InvalidInput(format!(
                    "vectors[{}][{}] is negative",
                    x, j
                )));
            }
        }
        Ok(VectorBinPacking {
            vectors,
            bin_weights,
            dim,
        })
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn bins(&self) -> usize {
        self.bin_weights.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn build<T: Scalar>(&self) -> Instance<T> {
        let vectors = self.vectors.clone();
        let weights = self.bin_weights.clone();
        let dim = self.dim;
        let types = dedup_partition(&self.vectors);
        Instance::new(
            self.n(),
            self.bins(),
            AggSpec::new(AggOp::Sum, Direction::Minimize),
            types,
            move |bin, members| {
                ExtValue::Finite(overshoot::<T>(&vectors, &weights[bin - 1], dim, members))
            },
        )
        .expect("adapter dimensions are consistent")
    }

    /// Recomputes the total overshoot from per-bin loads.
    pub fn crosscheck<T: Scalar>(&self, f: &BPartition) -> Result<ExtValue<T>> {
        check_coloring(self.n(), self.bins(), f)?;
        let mut total = T::zero();
        for (i, members) in f.preimages().into_iter().enumerate() {
            total = total + overshoot::<T>(&self.vectors, &self.bin_weights[i], self.dim, &members);
        }
        Ok(ExtValue::Finite(total))
    }
}

/// Sum over dimensions of max(0, load - weight), in target arithmetic.
fn overshoot<T: Scalar>(vectors: &[Vec<i64>], weight: &[i64], dim: usize, members: &[usize]) -> T {
    let mut total = T::zero();
    for j in 0..dim {
        let mut load = T::zero();
        for &x in members {
            load = load + T::from(vectors[x][j]);
        }
        let cap = T::from(weight[j]);
        if load > cap {
            total = total + (load - cap);
        }
    }
    total
}
