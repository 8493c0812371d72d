mod common;

use imglab::automaton::{img_automaton, recursion_mismatch};
use imglab::group::{act, Letter, TreeVertex};
use imglab::measure::{walk_oracle, FiniteMeasure};
use imglab::schreier::SchreierGraph;
use imglab::spectral::level_ops;

use common::generator_permutation;

#[test]
fn automaton_matches_recursion_up_to_level_ten() {
    assert_eq!(recursion_mismatch(&img_automaton(), 10).unwrap(), None);
}

#[test]
fn level_operators_match_independent_transducer() {
    for n in 0..=10 {
        let ops = level_ops(n).unwrap();
        for (l, op) in [(Letter::A, &ops.a), (Letter::B, &ops.b), (Letter::C, &ops.c)] {
            let reference: Vec<usize> = generator_permutation(l, n).into_iter().map(|x| x as usize).collect();
            assert_eq!(op.permutation(), reference.as_slice(), "{l} at level {n}");
        }
    }
}

#[test]
fn recursion_matches_independent_transducer() {
    for l in Letter::ALL {
        let reference = generator_permutation(l, 9);
        let g = imglab::GroupWord::letter(l);
        for v in TreeVertex::level_vertices(9) {
            assert_eq!(act(&g, &v).index() as u32, reference[v.index()]);
        }
    }
}

#[test]
fn schreier_adjacency_is_operator_sum() {
    for n in 0..=8 {
        let g = SchreierGraph::build(n, true).unwrap();
        assert_eq!(g.adjacency_matrix().unwrap(), level_ops(n).unwrap().sum(), "level {n}");
        assert!(g.is_connected());
        assert!((0..g.vertex_count()).all(|v| g.degree(v) == 3));
    }
}

#[test]
fn walk_increments_stay_in_support() {
    let fp = imglab::measure::fixed_point(1e-15);
    for seed in [1, 2, 3] {
        let r = walk_oracle(&FiniteMeasure::uniform(), 100_000, seed, 4).unwrap();
        assert_eq!(r.tally.iter().sum::<u64>(), 100_000);
        let r = walk_oracle(&fp.measure(), 100_000, seed, 4).unwrap();
        assert!((r.empirical.e - fp.alpha).abs() < 0.01, "seed {seed}: {}", r.empirical.e);
    }
}

#[test]
fn walk_tally_ignores_thread_count() {
    let m = FiniteMeasure::uniform();
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = one.install(|| walk_oracle(&m, 50_000, 9, 6).unwrap());
    let parallel = walk_oracle(&m, 50_000, 9, 6).unwrap();
    assert_eq!(serial.tally, parallel.tally);
}
