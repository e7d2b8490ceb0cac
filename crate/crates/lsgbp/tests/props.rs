//! Property tests for the core vocabulary: partitions, the flip metric,
//! value aggregation, and exactness of big-integer arithmetic.

use lsgbp::{
    flip_distance, flip_set, AggOp, AggSpec, BPartition, BigInt, Direction, ExtValue,
};
use proptest::prelude::*;

fn partition_strategy(n: usize, bins: usize) -> impl Strategy<Value = BPartition> {
    prop::collection::vec(1..=bins, n).prop_map(move |assign| BPartition::new(assign, bins).unwrap())
}

fn value_strategy() -> impl Strategy<Value = ExtValue<i64>> {
    prop_oneof![
        3 => (-1000i64..1000).prop_map(ExtValue::Finite),
        1 => Just(ExtValue::Worst),
    ]
}

proptest! {
    #[test]
    fn flip_distance_is_a_metric(
        f in partition_strategy(9, 3),
        g in partition_strategy(9, 3),
        h in partition_strategy(9, 3),
    ) {
        let fg = flip_distance(&f, &g).unwrap();
        let gf = flip_distance(&g, &f).unwrap();
        prop_assert_eq!(fg, gf);
        prop_assert_eq!(flip_distance(&f, &f).unwrap(), 0);
        prop_assert_eq!(fg == 0, f == g);
        let fh = flip_distance(&f, &h).unwrap();
        let gh = flip_distance(&g, &h).unwrap();
        prop_assert!(fh <= fg + gh);
    }

    #[test]
    fn flip_set_carries_the_distance(
        f in partition_strategy(7, 2),
        g in partition_strategy(7, 2),
    ) {
        let set = flip_set(&f, &g).unwrap();
        prop_assert_eq!(set.len(), flip_distance(&f, &g).unwrap());
        for x in 0..7 {
            prop_assert_eq!(set.contains(&x), f.bin_of(x) != g.bin_of(x));
        }
    }

    #[test]
    fn aggregation_is_commutative_and_absorbs_worst(
        a in value_strategy(),
        b in value_strategy(),
        op in prop_oneof![Just(AggOp::Sum), Just(AggOp::Product)],
    ) {
        let agg = AggSpec::new(op, Direction::Minimize);
        prop_assert_eq!(
            agg.combine(a.clone(), b.clone()),
            agg.combine(b.clone(), a.clone())
        );
        prop_assert_eq!(agg.combine(a.clone(), ExtValue::Worst), ExtValue::Worst);
        prop_assert_eq!(agg.combine(agg.identity(), a.clone()), a);
    }

    #[test]
    fn aggregation_is_associative(
        a in value_strategy(),
        b in value_strategy(),
        c in value_strategy(),
        op in prop_oneof![Just(AggOp::Sum), Just(AggOp::Product)],
    ) {
        let agg = AggSpec::new(op, Direction::Minimize);
        let left = agg.combine(agg.combine(a.clone(), b.clone()), c.clone());
        let right = agg.combine(a, agg.combine(b, c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn better_is_a_strict_partial_order_ignoring_worst(
        a in value_strategy(),
        b in value_strategy(),
        dir in prop_oneof![Just(Direction::Minimize), Just(Direction::Maximize)],
    ) {
        let agg = AggSpec::new(AggOp::Sum, dir);
        prop_assert!(!agg.better(&a, &a));
        prop_assert!(!(agg.better(&a, &b) && agg.better(&b, &a)));
        // Worst never improves on anything; any finite value beats Worst.
        prop_assert!(!agg.better(&ExtValue::Worst, &a));
        if !a.is_worst() {
            prop_assert!(agg.better(&a, &ExtValue::Worst));
        }
    }

    #[test]
    fn evaluators_are_order_insensitive(
        subset in prop::collection::btree_set(0usize..8, 0..=8),
        seed in 0u64..50,
    ) {
        // A bin evaluation must treat its member slice as a set.
        let problem = lsgbp::gen::random_vbp(8, 2, 3, 5, seed);
        let inst = problem.build::<i64>();
        let forward: Vec<usize> = subset.iter().copied().collect();
        let mut backward = forward.clone();
        backward.reverse();
        prop_assert_eq!(inst.eval_bin(1, &forward), inst.eval_bin(1, &backward));

        let graph_problem = lsgbp::gen::random_max_c_cut(8, 2, 0.5, seed);
        let ginst = graph_problem.build::<i64>();
        prop_assert_eq!(ginst.eval_bin(1, &forward), ginst.eval_bin(1, &backward));
    }
}

#[test]
fn big_integer_products_stay_exact() {
    // 30 agents, one item each worth 10^6: the welfare is 10^180, far
    // beyond any machine integer.
    let agents = 30;
    let utilities: Vec<Vec<i64>> = (0..agents)
        .map(|a| (0..agents).map(|x| if a == x { 1_000_000 } else { 0 }).collect())
        .collect();
    let problem = lsgbp::adapters::NashWelfare::new(utilities).unwrap();
    let inst = problem.build::<BigInt>();
    let f = BPartition::new((1..=agents).collect(), agents).unwrap();
    let expected = BigInt::from(1_000_000u64).pow(30);
    assert_eq!(inst.target_value(&f).unwrap(), ExtValue::Finite(expected.clone()));
    assert_eq!(
        problem.crosscheck::<BigInt>(&f).unwrap(),
        ExtValue::Finite(expected)
    );
}

#[test]
fn values_round_trip_through_decimal_strings() {
    let cases: Vec<ExtValue<BigInt>> = vec![
        ExtValue::Worst,
        ExtValue::Finite(BigInt::from(0)),
        ExtValue::Finite(BigInt::from(-7)),
        ExtValue::Finite(BigInt::from(10u8).pow(40)),
    ];
    for v in cases {
        let text = v.to_string();
        let back = ExtValue::<BigInt>::from_decimal(&text).unwrap();
        assert_eq!(back, v);
    }
}
