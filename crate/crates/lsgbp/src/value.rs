//! The extended value domain and its aggregation algebra.
//!
//! A bin evaluator may declare a bin content inadmissible. Instead of
//! carrying signed infinities around, the domain adjoins a single absorbing
//! symbol [`ExtValue::Worst`]: it loses every comparison regardless of the
//! optimization direction and absorbs both aggregation operators, so an
//! inadmissible bin poisons the whole partition value.

use std::fmt;

use crate::scalar::Scalar;

/// A scalar extended with the absorbing worst element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ExtValue<T> {
    Finite(T),
    Worst,
}

impl<T> ExtValue<T> {
    pub fn is_worst(&self) -> bool {
        matches!(self, ExtValue::Worst)
    }

    pub fn as_finite(&self) -> Option<&T> {
        match self {
            ExtValue::Finite(v) => Some(v),
            ExtValue::Worst => None,
        }
    }
}

impl<T: Scalar> ExtValue<T> {
    /// Parses the `Display` form back: the reserved word `worst` or a
    /// decimal integer.
    pub fn from_decimal(s: &str) -> Option<Self> {
        if s == "worst" {
            Some(ExtValue::Worst)
        } else {
            T::from_decimal(s).map(ExtValue::Finite)
        }
    }
}

impl<T: fmt::Display> fmt::Display for ExtValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(v) => write!(f, "{v}"),
            ExtValue::Worst => write!(f, "worst"),
        }
    }
}

/// Commutative, associative aggregation operator over bin values.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum AggOp {
    Sum,
    Product,
}

/// Which direction counts as an improvement.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Direction {
    Minimize,
    Maximize,
}

impl Direction {
    /// Whether finite `a` is strictly better than finite `b`.
    fn strictly_better<T: Ord>(self, a: &T, b: &T) -> bool {
        match self {
            Direction::Minimize => a < b,
            Direction::Maximize => a > b,
        }
    }
}

/// True iff `a` is strictly better than `b` under `dir`.
///
/// `Worst` is never better than anything; every finite value is better
/// than `Worst`.
pub fn better<T: Scalar>(a: &ExtValue<T>, b: &ExtValue<T>, dir: Direction) -> bool {
    match (a, b) {
        (ExtValue::Worst, _) => false,
        (ExtValue::Finite(_), ExtValue::Worst) => true,
        (ExtValue::Finite(x), ExtValue::Finite(y)) => dir.strictly_better(x, y),
    }
}

/// Aggregation operator paired with an optimization direction.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct AggSpec {
    pub op: AggOp,
    pub direction: Direction,
}

impl AggSpec {
    pub fn new(op: AggOp, direction: Direction) -> Self {
        AggSpec { op, direction }
    }

    /// Neutral element of the operator, as an extended value.
    pub fn identity<T: Scalar>(&self) -> ExtValue<T> {
        match self.op {
            AggOp::Sum => ExtValue::Finite(T::zero()),
            AggOp::Product => ExtValue::Finite(T::one()),
        }
    }

    /// Combines two extended values; `Worst` absorbs.
    pub fn combine<T: Scalar>(&self, a: ExtValue<T>, b: ExtValue<T>) -> ExtValue<T> {
        match (a, b) {
            (ExtValue::Finite(x), ExtValue::Finite(y)) => ExtValue::Finite(match self.op {
                AggOp::Sum => x + y,
                AggOp::Product => x * y,
            }),
            _ => ExtValue::Worst,
        }
    }

    /// Strict improvement under this spec's direction.
    pub fn better<T: Scalar>(&self, a: &ExtValue<T>, b: &ExtValue<T>) -> bool {
        better(a, b, self.direction)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type V = ExtValue<i64>;

    #[test]
    fn worst_absorbs_both_operators() {
        for op in [AggOp::Sum, AggOp::Product] {
            let spec = AggSpec::new(op, Direction::Minimize);
            assert_eq!(spec.combine(V::Finite(3), V::Worst), V::Worst);
            assert_eq!(spec.combine(V::Worst, V::Finite(3)), V::Worst);
            assert_eq!(spec.combine(V::Worst, V::Worst), V::Worst);
        }
    }

    #[test]
    fn finite_combination() {
        let sum = AggSpec::new(AggOp::Sum, Direction::Minimize);
        assert_eq!(sum.combine(V::Finite(2), V::Finite(5)), V::Finite(7));
        let prod = AggSpec::new(AggOp::Product, Direction::Maximize);
        assert_eq!(prod.combine(V::Finite(2), V::Finite(5)), V::Finite(10));
    }

    #[test]
    fn better_ignores_worst() {
        assert!(better(&V::Finite(1), &V::Finite(2), Direction::Minimize));
        assert!(!better(&V::Finite(2), &V::Finite(1), Direction::Minimize));
        assert!(better(&V::Finite(4), &V::Finite(1), Direction::Maximize));
        // Worst never improves over anything, not even Worst.
        assert!(!better(&V::Worst, &V::Finite(1_000_000_000), Direction::Minimize));
        assert!(!better(&V::Worst, &V::Worst, Direction::Maximize));
        // Any finite value beats Worst in either direction.
        assert!(better(&V::Finite(-50), &V::Worst, Direction::Minimize));
        assert!(better(&V::Finite(-50), &V::Worst, Direction::Maximize));
    }

    #[test]
    fn display_round_trip() {
        assert_eq!(V::Finite(-7).to_string(), "-7");
        assert_eq!(V::Worst.to_string(), "worst");
        assert_eq!(V::from_decimal("-7"), Some(V::Finite(-7)));
        assert_eq!(V::from_decimal("worst"), Some(V::Worst));
        assert_eq!(V::from_decimal("x"), None);
    }
}
