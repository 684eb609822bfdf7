//! Deterministic fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqgraph::{build, BuildOptions, SeqGraph, Sequence};

/// Seeded random sequence of length `p` over at most `n` symbols, ids dense.
pub fn random_sequence(seed: u64, n: usize, p: usize) -> Sequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x: Vec<usize> = (0..p).map(|_| rng.gen_range(0..n)).collect();
    Sequence::new(x).compact().0
}

/// Graph of a seeded random sequence.
pub fn sequence_graph(seed: u64, n: usize, p: usize, opts: BuildOptions) -> SeqGraph {
    build(&random_sequence(seed, n, p), opts).expect("random sequences are dense")
}

/// Path on `n` vertices, the smallest graphs with two pendants.
pub fn path(n: usize) -> SeqGraph {
    let mut g = SeqGraph::new(n, false, false);
    for v in 1..n {
        g.add_edge(v - 1, v).expect("fresh edge");
    }
    g
}

/// Complete graph minus a perfect-ish matching, so cliques are not trivial.
pub fn dense(n: usize) -> SeqGraph {
    let mut g = SeqGraph::new(n, false, false);
    for u in 0..n {
        for v in u + 1..n {
            if !(u % 2 == 0 && v == u + 1) {
                g.add_edge(u, v).expect("fresh edge");
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use seqgraph::realizes;

    #[test]
    fn fixtures_are_stable() {
        assert_eq!(random_sequence(3, 4, 20), random_sequence(3, 4, 20));
        let opts = BuildOptions::new(3, true, true);
        let g = sequence_graph(3, 4, 20, opts);
        assert!(realizes(&random_sequence(3, 4, 20), &g, 3));
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(dense(4).edge_count(), 4);
    }
}
