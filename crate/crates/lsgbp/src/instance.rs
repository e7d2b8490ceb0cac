//! Problem instances: an indexed family of bin evaluators plus the
//! aggregation rule and a type partition of the elements.
//!
//! The evaluator family is a single closure taking the bin index and the
//! bin's members; evaluators are pure, so repeated calls with the same
//! arguments must return the same value. Every invocation bumps an atomic
//! counter, which is what the search statistics and the complexity-bound
//! tests measure.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::partition::{BPartition, TypePartition};
use crate::scalar::Scalar;
use crate::value::{AggSpec, ExtValue};

type Ibe<T> = Box<dyn Fn(usize, &[usize]) -> ExtValue<T> + Send + Sync>;

/// A generalized bin problem instance over scalar type `T`.
pub struct Instance<T: Scalar> {
    n: usize,
    bins: usize,
    agg: AggSpec,
    types: TypePartition,
    ibe: Ibe<T>,
    evals: AtomicU64,
}

impl<T: Scalar> Instance<T> {
    /// Builds an instance. The type partition must cover exactly the
    /// elements `0..n`; whether it is actually target-equivalent is the
    /// caller's responsibility (see `typing::verify_target_equivalence`).
    pub fn new<F>(n: usize, bins: usize, agg: AggSpec, types: TypePartition, ibe: F) -> Result<Self>
    where
        F: Fn(usize, &[usize]) -> ExtValue<T> + Send + Sync + 'static,
    {
        if bins == 0 {
            return Err(Error::InvalidInput("instance needs at least one bin".into()));
        }
        if types.n() != n {
            return Err(Error::DimensionMismatch(format!(
                "type partition covers {} elements, instance has {n}",
                types.n()
            )));
        }
        Ok(Instance {
            n,
            bins,
            agg,
            types,
            ibe: Box::new(ibe),
            evals: AtomicU64::new(0),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    pub fn agg(&self) -> AggSpec {
        self.agg
    }

    pub fn types(&self) -> &TypePartition {
        &self.types
    }

    /// Number of evaluator invocations so far.
    pub fn eval_count(&self) -> u64 {
        self.evals.load(Ordering::Relaxed)
    }

    /// Evaluates bin `bin` (in `1..=b`) on `members`. Membership order is
    /// irrelevant to the result; evaluators treat the slice as a set.
    pub fn eval_bin(&self, bin: usize, members: &[usize]) -> ExtValue<T> {
        debug_assert!(bin >= 1 && bin <= self.bins, "bin {bin} outside 1..={}", self.bins);
        self.evals.fetch_add(1, Ordering::Relaxed);
        (self.ibe)(bin, members)
    }

    /// Objective value of `f`: the aggregate of all bin evaluations.
    /// Always performs exactly `b` evaluator calls.
    pub fn target_value(&self, f: &BPartition) -> Result<ExtValue<T>> {
        if f.n() != self.n || f.bins() != self.bins {
            return Err(Error::DimensionMismatch(format!(
                "partition over n={}, b={} against instance n={}, b={}",
                f.n(),
                f.bins(),
                self.n,
                self.bins
            )));
        }
        let pre = f.preimages();
        let mut acc = self.agg.identity();
        for (i, members) in pre.iter().enumerate() {
            let v = self.eval_bin(i + 1, members);
            acc = self.agg.combine(acc, v);
        }
        Ok(acc)
    }
}

impl<T: Scalar> std::fmt::Debug for Instance<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Instance")
            .field("n", &self.n)
            .field("bins", &self.bins)
            .field("agg", &self.agg)
            .field("tau", &self.types.tau())
            .finish()
    }
}
