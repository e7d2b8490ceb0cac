//! Nash social welfare with additive utilities: every item goes to
//! exactly one agent, each agent's utility is the sum of their utilities
//! for the items they receive, and the objective is the product of all
//! agent utilities, maximized. An agent left with nothing zeroes the
//! whole product, which is why exact big-integer arithmetic matters here:
//! products over many agents overflow fixed-width types quickly.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::partition::BPartition;
use crate::scalar::Scalar;
use crate::typing::dedup_partition;
use crate::value::{AggOp, AggSpec, Direction, ExtValue};

use super::max_c_cut::check_coloring;

#[derive(Clone, Debug)]
pub struct NashWelfare {
    utilities: Vec<Vec<i64>>,
}

impl NashWelfare {
    /// `utilities[a][x]` is agent a+1's utility for item x; the table
    /// must be rectangular with entries >= 0 and at least one agent.
    pub fn new(utilities: Vec<Vec<i64>>) -> Result<Self> {
        if utilities.is_empty() {
            return Err(Error::InvalidInput(
                "nash welfare needs at least one agent".into(),
            ));
        }
        let items = utilities[0].len();
        for (a, row) in utilities.iter().enumerate() {
            if row.len() != items {
                return Err(Error::DimensionMismatch(format!(
                    "utilities[{}] has {} entries, expected {}",
                    a,
                    row.len(),
                    items
                )));
            }
            if let Some(x) = row.iter().position(|&u| u < 0) {
                return Err(Error::InvalidInput(format!(
                    "utilities[{}][{}] is negative",
                    a, x
                )));
            }
        }
        Ok(NashWelfare { utilities })
    }

    pub fn agents(&self) -> usize {
        self.utilities.len()
    }

    pub fn n(&self) -> usize {
        self.utilities[0].len()
    }

    pub fn bins(&self) -> usize {
        self.agents()
    }

    pub fn build<T: Scalar>(&self) -> Instance<T> {
        let utilities = self.utilities.clone();
        // Items are interchangeable when every agent values them equally.
        let columns: Vec<Vec<i64>> = (0..self.n())
            .map(|x| self.utilities.iter().map(|row| row[x]).collect())
            .collect();
        let types = dedup_partition(&columns);
        Instance::new(
            self.n(),
            self.bins(),
            AggSpec::new(AggOp::Product, Direction::Maximize),
            types,
            move |bin, members| {
                let mut u = T::zero();
                for &x in members {
                    u = u + T::from(utilities[bin - 1][x]);
                }
                ExtValue::Finite(u)
            },
        )
        .expect("adapter dimensions are consistent")
    }

    /// Recomputes the welfare as a product of per-agent sums.
    pub fn crosscheck<T: Scalar>(&self, f: &BPartition) -> Result<ExtValue<T>> {
        check_coloring(self.n(), self.bins(), f)?;
        let mut product = T::one();
        for (a, members) in f.preimages().into_iter().enumerate() {
            let mut u = T::zero();
            for x in members {
                u = u + T::from(self.utilities[a][x]);
            }
            product = product * u;
        }
        Ok(ExtValue::Finite(product))
    }
}
