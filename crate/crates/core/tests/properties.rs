use proptest::prelude::*;
use seqgraph::builder::total_pairs;
use seqgraph::format::{parse_graph, write_graph};
use seqgraph::{build, dpcount, gu, ilp, oracle, realizes, w2, BuildOptions, Sequence};

/// Dense sequences over at most `n` symbols.
fn sequence(n: usize, max_len: usize) -> impl Strategy<Value = Sequence> {
    prop::collection::vec(0..n, 1..=max_len).prop_map(|x| Sequence::new(x).compact().0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn a_sequence_realizes_its_own_graph(x in sequence(5, 12), w in 2usize..6, directed: bool, weighted: bool) {
        let g = build(&x, BuildOptions::new(w, directed, weighted)).unwrap();
        prop_assert!(realizes(&x, &g, w));
        if weighted {
            prop_assert_eq!(g.total_weight(), total_pairs(x.len(), w));
            prop_assert_eq!(dpcount::derive_length(&g, w), Some(x.len()));
        }
    }

    #[test]
    fn graph_files_round_trip(x in sequence(6, 10), w in 2usize..5, directed: bool, weighted: bool) {
        let g = build(&x, BuildOptions::new(w, directed, weighted)).unwrap();
        let h = parse_graph(&write_graph(&g)).unwrap();
        prop_assert!(g.same_graph(&h));
        prop_assert_eq!(write_graph(&g), write_graph(&h));
    }

    #[test]
    fn weighted_counts_include_the_source(x in sequence(4, 9), w in 2usize..5, directed: bool) {
        let g = build(&x, BuildOptions::new(w, directed, true)).unwrap();
        let c = dpcount::count(&g, w, None).unwrap();
        prop_assert!(!c.is_zero());
        let all = dpcount::enumerate(&g, w, None, usize::MAX).unwrap();
        prop_assert_eq!(c, all.len() as u64);
        prop_assert!(all.contains(&x));
        prop_assert!(all.iter().all(|y| realizes(y, &g, w)));
        prop_assert!(ilp::verify_assignment(&g, w, &x).unwrap());
    }

    #[test]
    fn window_two_formulas_match_the_dp(x in sequence(4, 9), directed: bool) {
        let g = build(&x, BuildOptions::new(2, directed, true)).unwrap();
        let dp = dpcount::count(&g, 2, None).unwrap();
        let closed = w2::count_w2(&g, w2::DEFAULT_GW2_BUDGET).unwrap().count;
        prop_assert_eq!(dp, closed);
        prop_assert!(w2::w2_weighted_realizable(&g).unwrap());
    }

    #[test]
    fn unweighted_graphs_of_sequences_are_recognized(x in sequence(4, 10), w in 2usize..5) {
        let g = build(&x, BuildOptions::new(w, false, false)).unwrap();
        let y = gu::gu_realizable(&g, w).unwrap();
        prop_assert!(y.is_some_and(|y| realizes(&y, &g, w)));
        prop_assert!(!gu::gu_count(&g, w).unwrap().is_zero());
        let d = build(&x, BuildOptions::new(w, true, false)).unwrap();
        if w == 2 {
            prop_assert!(w2::du2_realizable(&d).unwrap());
        }
        let found = oracle::find(&d, w, x.len()).unwrap();
        prop_assert!(found.is_some_and(|y| y.len() <= x.len() && realizes(&y, &d, w)));
    }
}
