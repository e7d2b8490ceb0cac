//! Seeded random instance generators for the verification and benchmark
//! suites. Everything here is a pure function of its parameters: the same
//! seed always produces the same instance, on every platform.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::adapters::{
    ClusterEditing, MaxCCut, MultiKnapsack, NashWelfare, PiDeletion, PiPredicate,
    VectorBinPacking,
};
use crate::graph::Graph;

/// Erdos-Renyi graph G(n, p): each of the C(n, 2) pairs becomes an edge
/// independently with probability `p`. Pairs are scanned in lexicographic
/// order, so the draw sequence is fixed by the seed.
pub fn gnp_graph(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p), "edge probability {p} outside [0, 1]");
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated pairs are in range and distinct")
}

/// Random graph coloring instance on G(n, p) with `colors` color classes.
pub fn random_max_c_cut(n: usize, colors: usize, p: f64, seed: u64) -> MaxCCut {
    MaxCCut::new(gnp_graph(n, p, seed), colors).expect("colors >= 1")
}

/// Random cluster editing instance on G(n, p).
pub fn random_cluster_editing(n: usize, p: f64, seed: u64) -> ClusterEditing {
    ClusterEditing::new(gnp_graph(n, p, seed))
}

/// Random deletion instance on G(n, p) with `components` kept groups.
pub fn random_pi_deletion(
    n: usize,
    components: usize,
    pi: PiPredicate,
    p: f64,
    seed: u64,
) -> PiDeletion {
    PiDeletion::new(gnp_graph(n, p, seed), components, pi).expect("components >= 1")
}

/// Random packing instance: `n` demand vectors and `bins` weight vectors,
/// all of dimension `dim`. Demands are uniform in `0..=max_entry`; weights
/// are uniform in `0..=2 * max_entry`, so bins are tight but not hopeless.
pub fn random_vbp(n: usize, bins: usize, dim: usize, max_entry: i64, seed: u64) -> VectorBinPacking {
    assert!(max_entry >= 0, "max_entry must be nonnegative");
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let vectors = (0..n)
        .map(|_| (0..dim).map(|_| rng.gen_range(0..=max_entry)).collect())
        .collect();
    let weights = (0..bins)
        .map(|_| (0..dim).map(|_| rng.gen_range(0..=2 * max_entry)).collect())
        .collect();
    VectorBinPacking::new(vectors, weights).expect("generated tables are rectangular")
}

/// Random knapsack instance with `knapsacks` knapsacks (the instance gets
/// one extra leftover bin). Values are uniform in `0..=max_value`, weights
/// in `0..=max_weight`, capacities in `0..=2 * max_weight`, which makes
/// both feasible and overloaded assignments likely.
pub fn random_multi_knapsack(
    n: usize,
    knapsacks: usize,
    max_value: i64,
    max_weight: i64,
    seed: u64,
) -> MultiKnapsack {
    assert!(max_value >= 0 && max_weight >= 0, "bounds must be nonnegative");
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let capacities = (0..knapsacks)
        .map(|_| rng.gen_range(0..=2 * max_weight))
        .collect();
    let values = (0..n)
        .map(|_| (0..knapsacks).map(|_| rng.gen_range(0..=max_value)).collect())
        .collect();
    let weights = (0..n)
        .map(|_| (0..knapsacks).map(|_| rng.gen_range(0..=max_weight)).collect())
        .collect();
    MultiKnapsack::new(capacities, values, weights).expect("generated tables are rectangular")
}

/// Random allocation instance: `agents` agents, `items` items, utilities
/// uniform in `0..=max_utility`.
pub fn random_nash(agents: usize, items: usize, max_utility: i64, seed: u64) -> NashWelfare {
    assert!(max_utility >= 0, "max_utility must be nonnegative");
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let utilities = (0..agents)
        .map(|_| (0..items).map(|_| rng.gen_range(0..=max_utility)).collect())
        .collect();
    NashWelfare::new(utilities).expect("generated table is rectangular")
}
