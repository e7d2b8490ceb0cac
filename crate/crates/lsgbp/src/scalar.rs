//! Scalar abstraction for objective values.
//!
//! Every quantity the engine aggregates is an integer drawn from some exact
//! scalar type. The shipped adapters and the CLI use [`num_bigint::BigInt`]
//! so that products of many bin values (Nash-style objectives) never
//! overflow, but the whole engine is generic so that fixed-width types can
//! be substituted when their range is known to suffice.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::Num;

/// Bound for objective scalars: exact ring arithmetic with a total order.
///
/// `From<i64>` covers every constant the shipped adapters materialize
/// (edge counts, cardinalities, and file data validated into `i64`), and
/// `Num::from_str_radix` gives decimal parsing for solution files.
pub trait Scalar:
    Num + Ord + Hash + Clone + Debug + Display + From<i64> + Send + Sync + 'static
{
    /// Parses a base-10 value, the inverse of `Display`.
    fn from_decimal(s: &str) -> Option<Self> {
        Self::from_str_radix(s, 10).ok()
    }
}

impl<T> Scalar for T where
    T: Num + Ord + Hash + Clone + Debug + Display + From<i64> + Send + Sync + 'static
{
}
