//! Construction and verification of type partitions.
//!
//! Two elements are target equivalent when swapping one for the other
//! inside any bin content leaves every bin evaluator unchanged. The engine
//! never needs the coarsest such partition; it needs *some* partition whose
//! classes are pairwise target equivalent, produced here either from graph
//! structure (twin vertices) or from exact data keys (identical profiles).

use std::collections::HashMap;
use std::hash::Hash;

use rand::seq::index::sample as index_sample;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::Instance;
use crate::partition::TypePartition;
use crate::scalar::Scalar;

/// Above this size the verifier stops enumerating contexts exhaustively
/// and falls back to seeded sampling.
const EXHAUSTIVE_N_LIMIT: usize = 12;
/// Number of sampled contexts in the non-exhaustive mode.
const SAMPLE_BUDGET: u64 = 10_000;
/// Fixed seed for sampling mode; the report must be reproducible.
const SAMPLE_SEED: u64 = 0x5eed_0001;

/// Partitions the vertices of `g` into twin classes: `u` and `v` share a
/// class iff `N(u) \ {v} = N(v) \ {u}`.
///
/// Non-adjacent twins have equal open neighborhoods, adjacent twins equal
/// closed neighborhoods. Both groupings are computed and overlapping
/// groups are merged; since the twin relation is an equivalence, the merge
/// only ever glues groups describing the same class.
pub fn neighborhood_classes(g: &Graph) -> TypePartition {
    let n = g.n();
    let mut dsu = Dsu::new(n);

    let mut open: HashMap<&[usize], usize> = HashMap::new();
    for u in 0..n {
        match open.entry(g.neighbors(u)) {
            std::collections::hash_map::Entry::Occupied(e) => dsu.union(*e.get(), u),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(u);
            }
        }
    }

    let mut closed_keys: Vec<Vec<usize>> = Vec::with_capacity(n);
    for u in 0..n {
        let mut key = g.neighbors(u).to_vec();
        let pos = key.binary_search(&u).unwrap_err();
        key.insert(pos, u);
        closed_keys.push(key);
    }
    let mut closed: HashMap<&[usize], usize> = HashMap::new();
    for u in 0..n {
        match closed.entry(&closed_keys[u]) {
            std::collections::hash_map::Entry::Occupied(e) => dsu.union(*e.get(), u),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(u);
            }
        }
    }

    let labels: Vec<usize> = (0..n).map(|u| dsu.find(u)).collect();
    TypePartition::from_labels(&labels)
}

/// Groups elements by exact key equality, classes numbered in order of
/// first occurrence. Used by the data-driven adapters where two elements
/// are interchangeable precisely when their full numeric profiles match.
pub fn dedup_partition<K: Eq + Hash>(keys: impl IntoIterator<Item = K>) -> TypePartition {
    let mut seen: HashMap<K, usize> = HashMap::new();
    let mut labels = Vec::new();
    for key in keys {
        let next = seen.len();
        let c = *seen.entry(key).or_insert(next);
        labels.push(c);
    }
    TypePartition::from_labels(&labels)
}

/// A context on which target equivalence of a pair failed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivalenceWitness {
    /// Class the offending pair was drawn from.
    pub class: usize,
    /// Element contained in the context.
    pub x: usize,
    /// Element swapped in for `x`.
    pub y: usize,
    /// Bin evaluator that distinguished the two contents.
    pub bin: usize,
    /// The content `A` (contains `x`, not `y`), ascending.
    pub context: Vec<usize>,
}

/// Outcome of [`verify_target_equivalence`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivalenceReport {
    /// True if no checked context distinguished any same-class pair.
    pub holds: bool,
    /// First violation found, if any.
    pub witness: Option<EquivalenceWitness>,
    /// Number of (pair, bin, context) checks performed.
    pub checks_performed: u64,
    /// False when contexts were sampled rather than enumerated.
    pub exhaustive: bool,
}

/// Checks that the instance's type partition is actually target
/// equivalent: for same-class `x`, `y` and any content `A` with `x` in and
/// `y` out, every evaluator must value `A` and `A - x + y` identically.
///
/// Contexts are enumerated exhaustively for `n <= 12` and sampled with a
/// fixed seed above that, so reports are reproducible. `max_context` caps
/// the size of the contents considered and must be at least 1.
pub fn verify_target_equivalence<T: Scalar>(
    inst: &Instance<T>,
    max_context: usize,
) -> Result<EquivalenceReport> {
    if max_context == 0 {
        return Err(Error::InvalidInput(
            "max_context must be at least 1; a context always contains x".into(),
        ));
    }
    let n = inst.n();
    let types = inst.types();

    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for (class, members) in types.members().iter().enumerate() {
        for &x in members {
            for &y in members {
                if x != y {
                    pairs.push((class, x, y));
                }
            }
        }
    }

    let mut checks: u64 = 0;
    let exhaustive = n <= EXHAUSTIVE_N_LIMIT;

    if exhaustive {
        for &(class, x, y) in &pairs {
            let rest: Vec<usize> = (0..n).filter(|&z| z != x && z != y).collect();
            for mask in 0u64..(1u64 << rest.len()) {
                let mut context = vec![x];
                for (idx, &z) in rest.iter().enumerate() {
                    if mask >> idx & 1 == 1 {
                        context.push(z);
                    }
                }
                if context.len() > max_context {
                    continue;
                }
                context.sort_unstable();
                if let Some(w) = check_context(inst, class, x, y, &context, &mut checks) {
                    return Ok(EquivalenceReport {
                        holds: false,
                        witness: Some(w),
                        checks_performed: checks,
                        exhaustive,
                    });
                }
            }
        }
    } else if !pairs.is_empty() {
        let mut rng = Xoshiro256StarStar::seed_from_u64(SAMPLE_SEED);
        for _ in 0..SAMPLE_BUDGET {
            let (class, x, y) = pairs[rng.gen_range(0..pairs.len())];
            let rest: Vec<usize> = (0..n).filter(|&z| z != x && z != y).collect();
            let extra = rng.gen_range(0..=rest.len().min(max_context - 1));
            let mut context = vec![x];
            for idx in index_sample(&mut rng, rest.len(), extra) {
                context.push(rest[idx]);
            }
            context.sort_unstable();
            if let Some(w) = check_context(inst, class, x, y, &context, &mut checks) {
                return Ok(EquivalenceReport {
                    holds: false,
                    witness: Some(w),
                    checks_performed: checks,
                    exhaustive,
                });
            }
        }
    }

    Ok(EquivalenceReport {
        holds: true,
        witness: None,
        checks_performed: checks,
        exhaustive,
    })
}

/// Runs all bins on one (x, y, context) triple; `context` contains `x` and
/// not `y`. Returns the witness on the first disagreeing bin.
fn check_context<T: Scalar>(
    inst: &Instance<T>,
    class: usize,
    x: usize,
    y: usize,
    context: &[usize],
    checks: &mut u64,
) -> Option<EquivalenceWitness> {
    let swapped: Vec<usize> = context
        .iter()
        .map(|&z| if z == x { y } else { z })
        .collect();
    for bin in 1..=inst.bins() {
        *checks += 1;
        if inst.eval_bin(bin, context) != inst.eval_bin(bin, &swapped) {
            return Some(EquivalenceWitness {
                class,
                x,
                y,
                bin,
                context: context.to_vec(),
            });
        }
    }
    None
}

/// Exhaustively decides whether two elements are target equivalent on this
/// instance, ignoring the instance's own type partition. Only feasible for
/// small `n`; used to validate partitions and relation properties.
pub fn pair_target_equivalent<T: Scalar>(inst: &Instance<T>, x: usize, y: usize) -> Result<bool> {
    let n = inst.n();
    if n > EXHAUSTIVE_N_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "pairwise equivalence check enumerates all contexts; n={n} exceeds {EXHAUSTIVE_N_LIMIT}"
        )));
    }
    if x == y {
        return Ok(true);
    }
    let rest: Vec<usize> = (0..n).filter(|&z| z != x && z != y).collect();
    for mask in 0u64..(1u64 << rest.len()) {
        let mut context = vec![x];
        for (idx, &z) in rest.iter().enumerate() {
            if mask >> idx & 1 == 1 {
                context.push(z);
            }
        }
        context.sort_unstable();
        let swapped: Vec<usize> = context
            .iter()
            .map(|&z| if z == x { y } else { z })
            .collect();
        for bin in 1..=inst.bins() {
            if inst.eval_bin(bin, &context) != inst.eval_bin(bin, &swapped) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Union-find over `0..n`, path halving plus union by size.
struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}
