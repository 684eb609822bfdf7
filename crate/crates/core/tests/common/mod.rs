//! Shared fixtures for the integration suites.
#![allow(dead_code)]

use rand::Rng;
use seqgraph::{SeqGraph, Sequence};

/// Candidate edge slots for `n` vertices: ordered pairs for digraphs,
/// unordered for graphs, loops optional.
pub fn slots(n: usize, directed: bool, loops: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let keep = if directed {
                u != v || loops
            } else {
                u < v || (u == v && loops)
            };
            if keep {
                out.push((u, v));
            }
        }
    }
    out
}

pub fn from_mask(n: usize, directed: bool, slots: &[(usize, usize)], mask: u64) -> SeqGraph {
    let mut g = SeqGraph::new(n, directed, false);
    for (i, &(u, v)) in slots.iter().enumerate() {
        if mask >> i & 1 == 1 {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Every labelled unweighted graph on `n` vertices.
pub fn all_graphs(n: usize, directed: bool, loops: bool) -> impl Iterator<Item = SeqGraph> {
    let s = slots(n, directed, loops);
    (0u64..1 << s.len()).map(move |m| from_mask(n, directed, &s, m))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of unweighted graphs on `n`
/// vertices: the labelled graph whose edge mask is least among its
/// relabellings.
pub fn iso_classes(n: usize, directed: bool, loops: bool) -> Vec<SeqGraph> {
    let s = slots(n, directed, loops);
    let pos = |u: usize, v: usize| {
        let (a, b) = if directed || u <= v { (u, v) } else { (v, u) };
        s.iter().position(|&p| p == (a, b)).unwrap()
    };
    let perms = permutations(n);
    let images: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| s.iter().map(|&(u, v)| pos(p[u], p[v])).collect())
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << s.len() {
        let minimal = images.iter().all(|img| {
            let mut m = 0u64;
            for (i, &j) in img.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    m |= 1 << j;
                }
            }
            m >= mask
        });
        if minimal {
            out.push(from_mask(n, directed, &s, mask));
        }
    }
    out
}

/// A random sequence over at most `n` symbols with dense ids.
pub fn random_sequence(rng: &mut impl Rng, n: usize, p: usize) -> Sequence {
    let x: Vec<usize> = (0..p).map(|_| rng.gen_range(0..n)).collect();
    Sequence::new(x).compact().0
}

/// Every sequence over exactly `0..n` (all symbols used) of length `p`.
pub fn surjective_sequences(n: usize, p: usize) -> Vec<Sequence> {
    let mut out = Vec::new();
    let total = n.pow(p as u32);
    for mut code in 0..total {
        let mut x = vec![0; p];
        for slot in x.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        let mut seen = vec![false; n];
        x.iter().for_each(|&t| seen[t] = true);
        if seen.iter().all(|&s| s) {
            out.push(Sequence::new(x));
        }
    }
    out
}

/// Simple random graph with edge probability `q`.
pub fn random_simple_graph(rng: &mut impl Rng, n: usize, q: f64) -> SeqGraph {
    let mut g = SeqGraph::new(n, false, false);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(q) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}
