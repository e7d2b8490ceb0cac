//! Multiple knapsacks plus a leftover bin: items assigned to knapsack i
//! contribute their value there as long as the knapsack's capacity holds,
//! and an overloaded knapsack makes the whole assignment worthless. Items
//! in the leftover bin (the last one) contribute nothing.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::partition::BPartition;
use crate::scalar::Scalar;
use crate::typing::dedup_partition;
use crate::value::{AggOp, AggSpec, Direction, ExtValue};

use super::max_c_cut::check_coloring;

#[derive(Clone, Debug)]
pub struct MultiKnapsack {
    capacities: Vec<i64>,
    values: Vec<Vec<i64>>,
    weights: Vec<Vec<i64>>,
}

impl MultiKnapsack {
    /// `values[x][i]` and `weights[x][i]` describe item x in knapsack
    /// i+1; both tables must be n-by-m with entries >= 0.
    pub fn new(
        capacities: Vec<i64>,
        values: Vec<Vec<i64>>,
        weights: Vec<Vec<i64>>,
    ) -> Result<Self> {
        if capacities.is_empty() {
            return Err(Error::InvalidInput(
                "multi knapsack needs at least one knapsack".into(),
            ));
        }
        if let Some(i) = capacities.iter().position(|&c| c < 0) {
            return Err(Error::InvalidInput(format!(
                "capacities[{}] is negative",
                i
            )));
        }
        let m = capacities.len();
        if values.len() != weights.len() {
            return Err(Error::DimensionMismatch(format!(
                "values has {} rows but weights has {}",
                values.len(),
                weights.len()
            )));
        }
        for (x, row) in values.iter().enumerate() {
            if row.len() != m {
                return Err(Error::DimensionMismatch(format!(
                    "values[{}] has {} entries, expected {}",
                    x,
                    row.len(),
                    m
                )));
            }
            if let Some(i) = row.iter().position(|&v| v < 0) {
                return Err(Error::InvalidInput(format!(
                    "values[{}][{}] is negative",
                    x, i
                )));
            }
        }
        for (x, row) in weights.iter().enumerate() {
            if row.len() != m {
                return Err(Error::DimensionMismatch(format!(
                    "weights[{}] has {} entries, expected {}",
                    x,
                    row.len(),
                    m
                )));
            }
            if let Some(i) = row.iter().position(|&w| w < 0) {
                return Err(Error::InvalidInput(format!(
                    "weights[{}][{}] is negative",
                    x, i
                )));
            }
        }
        Ok(MultiKnapsack {
            capacities,
            values,
            weights,
        })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn knapsacks(&self) -> usize {
        self.capacities.len()
    }

    /// One bin per knapsack plus the leftover bin.
    pub fn bins(&self) -> usize {
        self.capacities.len() + 1
    }

    pub fn build<T: Scalar>(&self) -> Instance<T> {
        let capacities = self.capacities.clone();
        let values = self.values.clone();
        let weights = self.weights.clone();
        let m = self.knapsacks();
        // Items are interchangeable exactly when their whole value and
        // weight profiles agree.
        let profiles: Vec<Vec<i64>> = (0..self.n())
            .map(|x| {
                let mut p = Vec::with_capacity(2 * m);
                for i in 0..m {
                    p.push(self.values[x][i]);
                    p.push(self.weights[x][i]);
                }
                p
            })
            .collect();
        let types = dedup_partition(&profiles);
        Instance::new(
            self.n(),
            self.bins(),
            AggSpec::new(AggOp::Sum, Direction::Maximize),
            types,
            move |bin, members| {
                if bin > m {
                    return ExtValue::Finite(T::zero());
                }
                knapsack_value::<T>(&values, &weights, capacities[bin - 1], bin - 1, members)
            },
        )
        .expect("adapter dimensions are consistent")
    }

    /// Recomputes the total packed value, checking every capacity.
    pub fn crosscheck<T: Scalar>(&self, f: &BPartition) -> Result<ExtValue<T>> {
        check_coloring(self.n(), self.bins(), f)?;
        let mut total = T::zero();
        for (idx, members) in f.preimages().into_iter().enumerate() {
            if idx == self.knapsacks() {
                continue;
            }
            match knapsack_value::<T>(
                &self.values,
                &self.weights,
                self.capacities[idx],
                idx,
                &members,
            ) {
                ExtValue::Finite(v) => total = total + v,
                ExtValue::Worst => return Ok(ExtValue::Worst),
            }
        }
        Ok(ExtValue::Finite(total))
    }
}

/// Total value of `members` in knapsack `i` (0-based), or `Worst` when
/// their combined weight exceeds the capacity.
fn knapsack_value<T: Scalar>(
    values: &[Vec<i64>],
    weights: &[Vec<i64>],
    capacity: i64,
    i: usize,
    members: &[usize],
) -> ExtValue<T> {
    let mut load = T::zero();
    let mut value = T::zero();
    for &x in members {
        load = load + T::from(weights[x][i]);
        value = value + T::from(values[x][i]);
    }
    if load > T::from(capacity) {
        ExtValue::Worst
    } else {
        ExtValue::Finite(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overload_is_worst() {
        // Capacity 5, two items of weight 3 each.
        let p = MultiKnapsack::new(
            vec![5],
            vec![vec![10], vec![10]],
            vec![vec![3], vec![3]],
        )
        .unwrap();
        let inst = p.build::<i64>();
        let both = BPartition::new(vec![1, 1], 2).unwrap();
        assert_eq!(inst.target_value(&both).unwrap(), ExtValue::Worst);
        assert_eq!(p.crosscheck::<i64>(&both).unwrap(), ExtValue::Worst);
        let one_out = BPartition::new(vec![1, 2], 2).unwrap();
        assert_eq!(inst.target_value(&one_out).unwrap(), ExtValue::Finite(10));
        assert_eq!(p.crosscheck::<i64>(&one_out).unwrap(), ExtValue::Finite(10));
    }

    #[test]
    fn single_item_value() {
        let p = MultiKnapsack::new(vec![3], vec![vec![4]], vec![vec![3]]).unwrap();
        let f = BPartition::new(vec![1], 2).unwrap();
        assert_eq!(p.crosscheck::<i64>(&f).unwrap(), ExtValue::Finite(4));
    }

    #[test]
    fn leftover_bin_is_free() {
        let p = MultiKnapsack::new(vec![0], vec![vec![7]], vec![vec![5]]).unwrap();
        let inst = p.build::<i64>();
        let out = BPartition::new(vec![2], 2).unwrap();
        assert_eq!(inst.target_value(&out).unwrap(), ExtValue::Finite(0));
    }

    #[test]
    fn profile_typing_distinguishes_value_and_weight() {
        // Same weights, different values: different types.
        let p = MultiKnapsack::new(
            vec![10],
            vec![vec![1], vec![2], vec![1]],
            vec![vec![4], vec![4], vec![4]],
        )
        .unwrap();
        let inst = p.build::<i64>();
        assert_eq!(inst.types().tau(), 2);
        assert_eq!(inst.types().class_of(0), inst.types().class_of(2));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(MultiKnapsack::new(vec![], vec![], vec![]).is_err());
        let err =
            MultiKnapsack::new(vec![1], vec![vec![1, 2]], vec![vec![1]]).unwrap_err();
        assert!(err.to_string().contains("values[0]"));
        let err = MultiKnapsack::new(vec![1], vec![vec![1]], vec![vec![-1]]).unwrap_err();
        assert!(err.to_string().contains("negative"));
    }
}
