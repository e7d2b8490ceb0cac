//! Soundness checks for the shipped type partitions: every adapter's
//! partition must group only genuinely interchangeable elements, the
//! induced relation must behave like an equivalence, and graph typing
//! must not depend on vertex labels.

use lsgbp::adapters::{PiPredicate, Problem};
use lsgbp::gen;
use lsgbp::typing::{neighborhood_classes, pair_target_equivalent, verify_target_equivalence};
use lsgbp::Graph;

fn small_zoo(seed: u64) -> Vec<Problem> {
    vec![
        Problem::MaxCCut(gen::random_max_c_cut(7, 3, 0.5, seed)),
        Problem::ClusterEditing(gen::random_cluster_editing(5, 0.5, seed)),
        Problem::VectorBinPacking(gen::random_vbp(7, 3, 2, 3, seed)),
        Problem::MultiKnapsack(gen::random_multi_knapsack(6, 2, 3, 3, seed)),
        Problem::NashWelfare(gen::random_nash(3, 7, 2, seed)),
        Problem::PiDeletion(gen::random_pi_deletion(7, 2, PiPredicate::Edgeless, 0.4, seed)),
    ]
}

#[test]
fn shipped_partitions_verify_exhaustively() {
    for seed in 0..10 {
        for problem in small_zoo(seed) {
            let inst = problem.build::<i64>();
            let report = verify_target_equivalence(&inst, inst.n()).unwrap();
            assert!(
                report.holds,
                "{} (seed {seed}) shipped a bad partition: {:?}",
                problem.tag(),
                report.witness
            );
            assert!(report.exhaustive, "n <= 12 must be checked exhaustively");
            assert!(report.checks_performed > 0 || inst.types().tau() == inst.n());
        }
    }
}

#[test]
fn pairwise_relation_is_an_equivalence() {
    // Duplicated vectors give a rich relation; check it behaves like one.
    let problem = gen::random_vbp(6, 2, 1, 1, 3);
    let inst = problem.build::<i64>();
    let n = inst.n();
    let mut related = vec![vec![false; n]; n];
    for x in 0..n {
        for y in 0..n {
            related[x][y] = pair_target_equivalent(&inst, x, y).unwrap();
        }
    }
    for x in 0..n {
        assert!(related[x][x], "reflexivity at {x}");
        for y in 0..n {
            assert_eq!(related[x][y], related[y][x], "symmetry at ({x},{y})");
            for z in 0..n {
                if related[x][y] && related[y][z] {
                    assert!(related[x][z], "transitivity at ({x},{y},{z})");
                }
            }
        }
    }
    // The shipped classes must be a refinement of the true relation.
    let types = inst.types();
    for x in 0..n {
        for y in 0..n {
            if types.class_of(x) == types.class_of(y) {
                assert!(related[x][y], "class mates {x},{y} must be related");
            }
        }
    }
}

#[test]
fn neighborhood_classes_ignore_vertex_labels() {
    // Relabel a graph by a fixed permutation; the class structure must
    // transport along the permutation.
    let g = gen::gnp_graph(8, 0.5, 17);
    let perm: Vec<usize> = vec![3, 7, 0, 5, 1, 6, 2, 4];
    let relabeled_edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (perm[u], perm[v]))
        .collect();
    let h = Graph::new(8, relabeled_edges).unwrap();
    let tg = neighborhood_classes(&g);
    let th = neighborhood_classes(&h);
    assert_eq!(tg.tau(), th.tau());
    for u in 0..8 {
        for v in 0..8 {
            assert_eq!(
                tg.class_of(u) == tg.class_of(v),
                th.class_of(perm[u]) == th.class_of(perm[v]),
                "pair ({u},{v}) changed equivalence under relabeling"
            );
        }
    }
}

#[test]
fn wrong_partitions_are_caught_with_a_witness() {
    // Claim all vertices of a path are interchangeable; the verifier must
    // find a context separating an endpoint from the middle.
    let g = Graph::path(4);
    let inst = lsgbp::Instance::<i64>::new(
        4,
        2,
        lsgbp::AggSpec::new(lsgbp::AggOp::Sum, lsgbp::Direction::Minimize),
        lsgbp::TypePartition::uniform(4),
        move |_, members| lsgbp::ExtValue::Finite(g.edge_count_within(members) as i64),
    )
    .unwrap();
    let report = verify_target_equivalence(&inst, 4).unwrap();
    assert!(!report.holds);
    let w = report.witness.expect("a failing check must carry a witness");
    // The witness must re-evaluate to a genuine disagreement.
    let mut with_x = w.context.clone();
    with_x.push(w.x);
    let mut with_y = w.context.clone();
    with_y.push(w.y);
    assert_ne!(inst.eval_bin(w.bin, &with_x), inst.eval_bin(w.bin, &with_y));
}
