//! Parameterized local search for generalized bin problems.
//!
//! A problem instance is a set of `n` elements to be split into `b` bins,
//! where each bin is priced by its own evaluator and the per-bin values
//! are aggregated by sum or product, minimized or maximized. A special
//! `Worst` value marks inadmissible bins and is absorbing under
//! aggregation. This shape covers graph coloring objectives, cluster
//! editing, vector bin packing, multiple knapsacks, Nash social welfare,
//! and vertex deletion problems; the shipped adapters are in [`adapters`].
//!
//! The core operation is the `k`-flip improvement search
//! ([`best_improving_flip`]): given a partition, either find a strictly
//! better one that moves at most `k` elements, or certify that none
//! exists. Instead of scanning the whole neighborhood, the search runs a
//! dynamic program over a *type partition* of the elements, a grouping of
//! interchangeable elements; the table is indexed by how many elements of
//! each type a bin loses and gains, which makes the search practical when
//! the instance has few element types even if `n` is large. The
//! [`oracle`] module holds an independent brute-force implementation used
//! to validate the engine on small inputs, and [`driver`] iterates the
//! single-step search to a local optimum.
//!
//! Objective arithmetic is generic over the [`Scalar`] type. Use
//! [`BigInt`] (aliases [`BigValue`], [`BigInstance`]) when values can
//! outgrow machine integers, as products of utilities do; `i64` is fine
//! for small experiments.

pub mod adapters;
pub mod dp;
pub mod driver;
pub mod error;
pub mod gen;
pub mod graph;
pub mod instance;
pub mod oracle;
pub mod partition;
pub mod scalar;
pub mod typespec;
pub mod typing;
pub mod value;

pub use dp::{
    best_improving_flip, search_improving_flip, FlipPlan, SearchOptions, SearchResult,
    SearchStats, Strategy,
};
pub use driver::{run_local_search, RunTrace, StepRecord};
pub use error::{Error, Result};
pub use graph::Graph;
pub use instance::Instance;
pub use oracle::{
    brute_force_best_flip, brute_force_best_flip_with, exhaustive_optimum, OracleBudget,
    OracleResult,
};
pub use partition::{flip_distance, flip_set, BPartition, TypePartition};
pub use scalar::Scalar;
pub use typespec::{enumerate_deltas, is_compatible, TypeSpec};
pub use typing::{
    neighborhood_classes, verify_target_equivalence, EquivalenceReport, EquivalenceWitness,
};
pub use value::{better, AggOp, AggSpec, Direction, ExtValue};

pub use num_bigint::BigInt;

/// Objective value over exact big integers.
pub type BigValue = ExtValue<BigInt>;

/// Instance with exact big-integer objective arithmetic.
pub type BigInstance = Instance<BigInt>;
