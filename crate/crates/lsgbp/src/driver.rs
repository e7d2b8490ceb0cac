//! Iterated local search: repeat the k-flip engine until no strictly
//! improving neighbor exists or an iteration cap is hit.

use std::time::{Duration, Instant};

use crate::dp::{search_improving_flip, SearchOptions};
use crate::error::Result;
use crate::instance::Instance;
use crate::partition::BPartition;
use crate::scalar::Scalar;
use crate::value::ExtValue;

/// One accepted improvement.
#[derive(Clone, Debug)]
pub struct StepRecord<T> {
    /// 1-based improvement index.
    pub iteration: usize,
    /// Objective value after the step.
    pub value: ExtValue<T>,
    /// Flip distance between the consecutive partitions.
    pub flip_size: usize,
    /// Time spent inside the engine call that produced this step.
    pub wall: Duration,
}

/// Full record of a local-search run.
#[derive(Clone, Debug)]
pub struct RunTrace<T> {
    /// Accepted improvements in order; empty when the start was already
    /// locally optimal (or the iteration cap was 0).
    pub steps: Vec<StepRecord<T>>,
    pub final_partition: BPartition,
    /// Value of the final partition.
    pub final_value: ExtValue<T>,
    /// True iff the last engine call proved no improvement exists within
    /// radius k. False when the run stopped at the iteration cap.
    pub locally_optimal: bool,
    /// Evaluator invocations across the whole run.
    pub total_ibe_evals: u64,
    /// Radius vectors examined across the whole run.
    pub total_deltas: u64,
    /// DP cells filled across the whole run.
    pub total_table_entries: u64,
    pub total_wall: Duration,
}

/// Runs strict-improvement local search from `f0` with radius `k`.
///
/// Each iteration takes the engine's move (best or first, per options) and
/// repeats from the new partition. Values are integral and strictly
/// improving, so on bounded objectives the loop always terminates; the cap
/// only exists to bound single calls from the outside.
pub fn run_local_search<T: Scalar>(
    inst: &Instance<T>,
    f0: &BPartition,
    k: usize,
    opts: &SearchOptions,
    max_iters: u64,
) -> Result<RunTrace<T>> {
    let started = Instant::now();
    let mut current = f0.clone();
    let mut current_value: Option<ExtValue<T>> = None;
    let mut steps = Vec::new();
    let mut locally_optimal = false;
    let mut total_ibe = 0u64;
    let mut total_deltas = 0u64;
    let mut total_entries = 0u64;

    let mut iter = 0u64;
    while iter < max_iters {
        iter += 1;
        let res = search_improving_flip(inst, &current, k, opts)?;
        total_ibe += res.stats.ibe_evals;
        total_deltas += res.stats.deltas_enumerated;
        total_entries += res.stats.table_entries;
        if !res.improved {
            locally_optimal = true;
            current_value = Some(res.value);
            break;
        }
        let next = res.partition.expect("improved result carries a partition");
        steps.push(StepRecord {
            iteration: steps.len() + 1,
            value: res.value.clone(),
            flip_size: crate::partition::flip_distance(&current, &next)?,
            wall: res.stats.wall,
        });
        current = next;
        current_value = Some(res.value);
    }

    let final_value = match current_value {
        Some(v) => v,
        // Zero iterations requested: price the start ourselves.
        None => inst.target_value(&current)?,
    };

    Ok(RunTrace {
        steps,
        final_partition: current,
        final_value,
        locally_optimal,
        total_ibe_evals: total_ibe,
        total_deltas,
        total_table_entries: total_entries,
        total_wall: started.elapsed(),
    })
}
