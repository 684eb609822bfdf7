//! A DU family whose realizations are exponentially long in the window.
//!
//! Vertices `a_{i,j}`, `b_{i,j}`, `c_{i,j}` (`i ∈ 1..=k`, `j < n`) and a
//! start `s`. `a_{i,j}` has rank `i`, `b`/`c` vertices rank `i + k`, `s`
//! rank 0, all modulo `2k`. Every arc advances the rank by `1..=k`, which
//! forces consecutive ranks along any realization, so each block of `k`
//! symbols spells a tuple of values and the arcs only let a tuple stay,
//! reset or step to its lexicographic successor. A realization must count
//! through all `n^k` tuples.

use std::collections::HashSet;

use crate::builder::{build_labeled, BuildOptions};
use crate::error::{Error, Result};
use crate::graph::{SeqGraph, Sequence, VertexId};
use crate::oracle::{first, Constraints, FirstOutcome};

/// Default cap on the length of the constructed counting walk.
pub const DEFAULT_EXPO_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpoInstance {
    pub graph: SeqGraph,
    /// The counting walk, present in filtered mode.
    pub witness: Option<Sequence>,
    /// Rank of each vertex of `graph`, modulo `2k`.
    pub ranks: Vec<usize>,
    pub n: usize,
    pub k: usize,
}

#[derive(Clone, Copy)]
struct Layout {
    n: usize,
    k: usize,
}

impl Layout {
    fn a(&self, i: usize, j: usize) -> VertexId {
        1 + (i - 1) * self.n + j
    }
    fn b(&self, i: usize, j: usize) -> VertexId {
        1 + self.k * self.n + (i - 1) * self.n + j
    }
    fn c(&self, i: usize, j: usize) -> VertexId {
        1 + 2 * self.k * self.n + (i - 1) * self.n + j
    }
    fn size(&self) -> usize {
        1 + 3 * self.k * self.n
    }

    fn labels(&self) -> Vec<String> {
        let mut l = vec!["s".to_string()];
        for set in ["a", "b", "c"] {
            for i in 1..=self.k {
                l.extend((0..self.n).map(|j| format!("{set}{i}_{j}")));
            }
        }
        l
    }

    fn rank(&self, v: VertexId) -> usize {
        if v == 0 {
            0
        } else if v < self.b(1, 0) {
            (v - 1) / self.n + 1
        } else {
            ((v - 1) / self.n) % self.k + 1 + self.k
        }
        .rem_euclid(2 * self.k)
    }

    /// The counting DAG: the listed arc rules plus `a_{i,·} → c_{i′,·}`
    /// for `i′ < i` and `b_{i,·} → c_{i′,·}` for `i′ > i`, which a carry
    /// block needs when it follows a tuple.
    fn arcs(&self) -> Vec<(VertexId, VertexId)> {
        let (n, k) = (self.n, self.k);
        let mut out = Vec::new();
        out.extend((1..=k).map(|i| (0, self.a(i, 0))));
        for i in 1..=k {
            for j in 0..n {
                let (a, b, c) = (self.a(i, j), self.b(i, j), self.c(i, j));
                for i2 in 1..=k {
                    for j2 in 0..n {
                        if i2 > i {
                            out.push((a, self.a(i2, j2)));
                            out.push((b, self.b(i2, j2)));
                            out.push((b, self.c(i2, j2)));
                        }
                        if i2 < i {
                            out.push((a, self.b(i2, j2)));
                            out.push((a, self.c(i2, j2)));
                            out.push((b, self.a(i2, j2)));
                            out.push((c, self.a(i2, j2)));
                        }
                    }
                    if i2 > i {
                        out.push((c, self.c(i2, 0)));
                    }
                }
                out.push((a, b));
                out.push((a, self.c(i, (j + 1) % n)));
                out.push((b, a));
                out.push((c, a));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `s`, the zero tuple, then for each successor a carry block and the
    /// new tuple, then a final reset block.
    fn walk(&self) -> Vec<VertexId> {
        let (n, k) = (self.n, self.k);
        let mut t = vec![0usize; k];
        let mut x = vec![0];
        x.extend((1..=k).map(|i| self.a(i, 0)));
        while let Some(p) = (0..k).rev().find(|&p| t[p] < n - 1) {
            for i in 0..p {
                x.push(self.b(i + 1, t[i]));
            }
            t[p] += 1;
            x.push(self.c(p + 1, t[p]));
            for (i, ti) in t.iter_mut().enumerate().skip(p + 1) {
                *ti = 0;
                x.push(self.c(i + 1, 0));
            }
            x.extend((1..=k).map(|i| self.a(i, t[i - 1])));
        }
        x.extend((1..=k).map(|i| self.c(i, 0)));
        x
    }
}

pub fn expo(n: usize, k: usize, filtered: bool) -> Result<ExpoInstance> {
    expo_capped(n, k, filtered, DEFAULT_EXPO_CAP)
}

/// Unfiltered: the whole DAG on `3kn + 1` vertices. Filtered: only the
/// arcs and vertices used by the counting walk of length `2k·n^k + 1`,
/// which is returned as a witness at window `k + 1`.
pub fn expo_capped(n: usize, k: usize, filtered: bool, cap: usize) -> Result<ExpoInstance> {
    if n < 2 || k < 1 {
        return Err(Error::Precondition(format!(
            "need n >= 2 and k >= 1, got n = {n}, k = {k}"
        )));
    }
    let lay = Layout { n, k };
    if !filtered {
        let mut g = SeqGraph::with_labels(lay.labels(), true, false)?;
        for (u, v) in lay.arcs() {
            g.add_edge(u, v)?;
        }
        let ranks = (0..lay.size()).map(|v| lay.rank(v)).collect();
        return Ok(ExpoInstance {
            graph: g,
            witness: None,
            ranks,
            n,
            k,
        });
    }
    let len = u32::try_from(k)
        .ok()
        .and_then(|k32| n.checked_pow(k32))
        .and_then(|p| p.checked_mul(2 * k))
        .and_then(|l| l.checked_add(1))
        .filter(|&l| l <= cap)
        .ok_or(Error::SizeLimit(cap))?;
    let walk = lay.walk();
    debug_assert_eq!(walk.len(), len);
    let allowed: HashSet<_> = lay.arcs().into_iter().collect();
    let w = k + 1;
    for i in 0..walk.len() {
        for j in i + 1..walk.len().min(i + w) {
            if !allowed.contains(&(walk[i], walk[j])) {
                return Err(Error::WitnessRejected(format!(
                    "walk pair ({}, {}) is not an arc",
                    walk[i], walk[j]
                )));
            }
        }
    }
    let (x, old) = Sequence::new(walk).compact();
    let all = lay.labels();
    let labels = old.iter().map(|&v| all[v].clone()).collect();
    let g = build_labeled(&x, labels, BuildOptions::new(w, true, false))?;
    let ranks = old.iter().map(|&v| lay.rank(v)).collect();
    Ok(ExpoInstance {
        graph: g,
        witness: Some(x),
        ranks,
        n,
        k,
    })
}

impl ExpoInstance {
    pub fn window(&self) -> usize {
        self.k + 1
    }

    /// The lower bound `2k·n^k` on any realization's length.
    pub fn bound(&self) -> usize {
        2 * self.k * self.n.pow(self.k as u32)
    }

    /// Id of the start vertex `s`.
    pub fn start(&self) -> VertexId {
        self.graph.vertex_by_label("s").unwrap_or(0)
    }

    /// A shortest realization up to `max_len`. With `pruned`, the search
    /// starts at `s` and only appends the symbol of the next rank. Both are
    /// forced for every realization: `s` has no in-arcs, and since arcs
    /// advance the rank by `1..=k`, the `k` symbols after any position in
    /// a full window carry consecutive ranks.
    pub fn shortest(&self, max_len: usize, pruned: bool, budget: u64) -> Result<FirstOutcome> {
        let w = self.window();
        let modulus = 2 * self.k;
        let ranks = &self.ranks;
        let next_rank = |suffix: &[VertexId], v: VertexId| match suffix.last() {
            Some(&u) => ranks[v] == (ranks[u] + 1) % modulus,
            None => true,
        };
        let cons = if pruned {
            Constraints {
                prefix: vec![self.start()],
                allow: Some(&next_rank),
            }
        } else {
            Constraints::default()
        };
        first(&self.graph, w, max_len, &cons, budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::realizes;
    use crate::oracle::DEFAULT_BUDGET;

    #[test]
    fn unfiltered_shape() {
        let e = expo(2, 2, false).unwrap();
        assert_eq!(e.graph.n(), 13);
        let g = &e.graph;
        let sources: Vec<_> = (0..g.n()).filter(|&v| (0..g.n()).all(|u| !g.has_edge(u, v))).collect();
        assert_eq!(sources, vec![0]);
        // every arc advances the rank by 1..=k
        for (u, v, _) in g.edges() {
            let d = (e.ranks[v] + 4 - e.ranks[u]) % 4;
            assert!((1..=2).contains(&d), "{} -> {}", g.label(u), g.label(v));
        }
    }

    #[test]
    fn filtered_witness() {
        for (n, k) in [(2, 1), (2, 2), (3, 2), (2, 3)] {
            let e = expo(n, k, true).unwrap();
            let x = e.witness.as_ref().unwrap();
            assert_eq!(x.len(), e.bound() + 1);
            assert!(realizes(x, &e.graph, k + 1));
        }
        let e = expo(2, 2, true).unwrap();
        let x = e.witness.as_ref().unwrap();
        let shown = x.display_with(&e.graph).to_string();
        assert!(shown.starts_with("s a1_0 a2_0 b1_0 c2_1 a1_0 a2_1 c1_1 c2_0 a1_1 a2_0"));
        assert!(shown.ends_with("a1_1 a2_1 c1_0 c2_0"));
    }

    #[test]
    fn pruned_search_meets_the_bound() {
        for (n, k) in [(2, 1), (2, 2)] {
            let e = expo(n, k, true).unwrap();
            let out = e.shortest(4 * e.bound(), true, DEFAULT_BUDGET).unwrap();
            let x = out.witness().expect("filtered instances are realizable");
            assert!(x.len() >= e.bound());
            assert!(realizes(x, &e.graph, k + 1));
        }
    }

    #[test]
    fn plain_search_agrees_at_the_smallest_size() {
        let e = expo(2, 1, true).unwrap();
        let pruned = e.shortest(20, true, DEFAULT_BUDGET).unwrap();
        let plain = e.shortest(20, false, DEFAULT_BUDGET).unwrap();
        assert_eq!(pruned.witness().map(|x| x.len()), plain.witness().map(|x| x.len()));
    }

    #[test]
    fn size_cap() {
        assert_eq!(expo_capped(3, 4, true, 100), Err(Error::SizeLimit(100)));
        assert!(expo_capped(3, 4, false, 100).is_ok());
        assert!(matches!(expo(1, 2, true), Err(Error::Precondition(_))));
    }
}
