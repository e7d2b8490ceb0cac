//! Brute-force reference implementations.
//!
//! These enumerate candidate partitions directly from the definitions and
//! evaluate each with full objective recomputations; they share no search
//! machinery with the engine, which is exactly what makes them useful as
//! ground truth. Budgets keep them from being pointed at anything large.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::partition::BPartition;
use crate::scalar::Scalar;
use crate::value::ExtValue;

/// Enumeration limits for the brute-force routines.
#[derive(Copy, Clone, Debug)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_b: usize,
    pub max_k: usize,
    /// Upper bound on candidate partitions enumerated per call.
    pub max_candidates: u128,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n: 8,
            max_b: 4,
            max_k: 3,
            max_candidates: 10_000_000,
        }
    }
}

impl OracleBudget {
    /// Number of partitions within flip distance `k` of a fixed partition:
    /// sum over set sizes of C(n, s) * (b - 1)^s.
    pub fn neighborhood_size(n: usize, b: usize, k: usize) -> u128 {
        let mut total: u128 = 0;
        let mut binom: u128 = 1;
        for s in 0..=k.min(n) {
            if s > 0 {
                binom = binom * (n - s + 1) as u128 / s as u128;
            }
            total += binom * (b as u128 - 1).pow(s as u32);
        }
        total
    }

    fn admit_flip(&self, n: usize, b: usize, k: usize) -> Result<()> {
        if n > self.max_n || b > self.max_b || k > self.max_k {
            return Err(Error::BudgetExceeded(format!(
                "n={n}, b={b}, k={k} outside oracle budget (max {}, {}, {})",
                self.max_n, self.max_b, self.max_k
            )));
        }
        let size = Self::neighborhood_size(n, b, k);
        if size > self.max_candidates {
            return Err(Error::BudgetExceeded(format!(
                "{size} neighborhood candidates exceed {}",
                self.max_candidates
            )));
        }
        Ok(())
    }

    fn admit_exhaustive(&self, n: usize, b: usize) -> Result<()> {
        let total = (b as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if total > self.max_candidates {
            return Err(Error::BudgetExceeded(format!(
                "{b}^{n} assignments exceed {}",
                self.max_candidates
            )));
        }
        Ok(())
    }
}

/// Result of a brute-force neighborhood scan.
#[derive(Clone, Debug)]
pub struct OracleResult<T> {
    pub improved: bool,
    /// Best strictly improving partition, present iff `improved`. Ties are
    /// broken toward the lexicographically smallest assignment array.
    pub partition: Option<BPartition>,
    /// Value of the returned partition, or of `f` when not improved.
    pub value: ExtValue<T>,
    /// Candidates examined (the unchanged partition is not a candidate).
    pub candidates: u64,
}

/// Exhaustively scans every partition within flip distance `k` of `f` by
/// enumerating flip sets and all reassignments of their elements, fully
/// re-evaluating each candidate. Uses the default budget.
pub fn brute_force_best_flip<T: Scalar>(
    inst: &Instance<T>,
    f: &BPartition,
    k: usize,
) -> Result<OracleResult<T>> {
    brute_force_best_flip_with(inst, f, k, &OracleBudget::default())
}

/// [`brute_force_best_flip`] under an explicit budget.
pub fn brute_force_best_flip_with<T: Scalar>(
    inst: &Instance<T>,
    f: &BPartition,
    k: usize,
    budget: &OracleBudget,
) -> Result<OracleResult<T>> {
    let n = inst.n();
    let b = inst.bins();
    budget.admit_flip(n, b, k)?;
    let base = inst.target_value(f)?;
    let agg = inst.agg();

    let mut best: Option<(ExtValue<T>, BPartition)> = None;
    let mut candidates: u64 = 0;

    if b >= 2 {
        for s in 1..=k.min(n) {
            for_each_combination(n, s, |members| {
                // Every reassignment sends each member to a bin other than
                // its current one; slot values index the b-1 alternatives.
                let mut choice = vec![0usize; s];
                loop {
                    let mut assign = f.assign().to_vec();
                    for (slot, &x) in members.iter().enumerate() {
                        let mut bin = choice[slot] + 1;
                        if bin >= f.bin_of(x) {
                            bin += 1;
                        }
                        assign[x] = bin;
                    }
                    let g = BPartition::new(assign, b).expect("bins stay in range");
                    candidates += 1;
                    let v = inst
                        .target_value(&g)
                        .expect("candidate has the instance shape");
                    if agg.better(&v, &base) {
                        let replace = match &best {
                            None => true,
                            Some((bv, bg)) => {
                                agg.better(&v, bv) || (v == *bv && g.assign() < bg.assign())
                            }
                        };
                        if replace {
                            best = Some((v, g));
                        }
                    }
                    let mut slot = 0;
                    while slot < s {
                        choice[slot] += 1;
                        if choice[slot] < b - 1 {
                            break;
                        }
                        choice[slot] = 0;
                        slot += 1;
                    }
                    if slot == s {
                        break;
                    }
                }
            });
        }
    }

    Ok(match best {
        Some((value, partition)) => OracleResult {
            improved: true,
            partition: Some(partition),
            value,
            candidates,
        },
        None => OracleResult {
            improved: false,
            partition: None,
            value: base,
            candidates,
        },
    })
}

/// Calls `body` with every ascending `s`-subset of `0..n`.
fn for_each_combination(n: usize, s: usize, mut body: impl FnMut(&[usize])) {
    debug_assert!(s >= 1 && s <= n);
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        body(&idx);
        // Advance the rightmost index that still has headroom.
        let mut i = s;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - (s - i) {
                idx[i] += 1;
                for j in i + 1..s {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Best partition over the entire assignment space, ties broken toward
/// the lexicographically smallest assignment array.
pub fn exhaustive_optimum<T: Scalar>(
    inst: &Instance<T>,
    budget: &OracleBudget,
) -> Result<(BPartition, ExtValue<T>)> {
    let n = inst.n();
    let b = inst.bins();
    budget.admit_exhaustive(n, b)?;

    let mut assign = vec![1usize; n];
    let mut best: Option<(ExtValue<T>, Vec<usize>)> = None;
    let agg = inst.agg();
    loop {
        let g = BPartition::new(assign.clone(), b)?;
        let v = inst.target_value(&g)?;
        let replace = match &best {
            None => true,
            // Enumeration is lexicographic, so strict improvement is the
            // only reason to replace.
            Some((bv, _)) => agg.better(&v, bv),
        };
        if replace {
            best = Some((v, assign.clone()));
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                let (value, arr) = best.expect("at least one assignment exists");
                return Ok((BPartition::new(arr, b)?, value));
            }
            pos -= 1;
            assign[pos] += 1;
            if assign[pos] <= b {
                break;
            }
            assign[pos] = 1;
        }
    }
}
