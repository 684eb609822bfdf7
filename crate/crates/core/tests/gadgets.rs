mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqgraph::format::write_graph;
use seqgraph::gadgets::{clique_gadget, du_chain, dw_ham, expo, gw_ham, hp1, hp2, optional_instance};
use seqgraph::gu::gu_realizable;
use seqgraph::oracle::{hamiltonian_path_between, has_clique, has_hamiltonian_cycle};
use seqgraph::{realizes, SeqGraph};

#[test]
fn hp2_preserves_hamiltonicity_up_to_six_vertices() {
    for n in 3..=6 {
        for g in common::iso_classes(n, false, false) {
            let h = hp2(&g).unwrap();
            assert_eq!(
                has_hamiltonian_cycle(&g),
                hamiltonian_path_between(&h, Some(n + 1), Some(n + 2)),
                "{}",
                write_graph(&g)
            );
        }
    }
}

#[test]
fn hp1_preserves_hamiltonicity_on_small_digraphs() {
    for n in 2..=4 {
        for g in common::iso_classes(n, true, false) {
            let h = hp1(&g).unwrap();
            assert_eq!(
                has_hamiltonian_cycle(&g),
                hamiltonian_path_between(&h, Some(0), Some(n))
            );
        }
    }
}

fn clique_agrees(g: &SeqGraph, k: usize) {
    let (h, w) = clique_gadget(g, k).unwrap();
    let x = gu_realizable(&h, w).unwrap();
    assert_eq!(has_clique(g, k), x.is_some(), "k = {k}: {}", write_graph(g));
    if let Some(x) = x {
        assert!(realizes(&x, &h, w));
    }
}

#[test]
fn clique_gadget_matches_search_on_small_graphs() {
    for n in 1..=6 {
        for g in common::iso_classes(n, false, false) {
            for k in 1..=4 {
                clique_agrees(&g, k);
            }
        }
    }
}

#[test]
fn clique_gadget_matches_search_on_seven_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..60 {
        let g = common::random_simple_graph(&mut rng, 7, 0.2 + 0.01 * i as f64);
        for k in 3..=4 {
            clique_agrees(&g, k);
        }
    }
}

#[test]
fn generators_are_deterministic() {
    let mut g = SeqGraph::new(5, false, false);
    for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)] {
        g.add_edge(u, v).unwrap();
    }
    let mut d = SeqGraph::new(3, true, false);
    d.add_edge(0, 1).unwrap();
    d.add_edge(1, 2).unwrap();
    let make = || {
        [
            write_graph(&dw_ham(&g, 3).unwrap()),
            write_graph(&gw_ham(&g, 4).unwrap()),
            write_graph(&clique_gadget(&g, 3).unwrap().0),
            write_graph(&hp2(&g).unwrap()),
            write_graph(&du_chain(&optional_instance(&d, 3).unwrap()).unwrap().graph),
            write_graph(&expo(2, 2, true).unwrap().graph),
            write_graph(&expo(2, 2, false).unwrap().graph),
        ]
    };
    assert_eq!(make(), make());
}
