//! The OptionalRealizable intermediate problem and the DU separator chain.
//!
//! An instance fixes a digraph `A′`, a set of compulsory arcs and a start
//! string `P` of length `w − 1`. A solution is a sequence beginning with
//! `P` whose realized arcs all lie in `A′` and include every compulsory
//! arc; vertices need not all occur.

use std::collections::{BTreeSet, HashSet};

use super::{labelled, require_plain};
use crate::error::{Error, Result};
use crate::graph::{SeqGraph, Sequence, VertexId};
use crate::oracle::FirstOutcome;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptionalInstance {
    /// All allowed arcs `A′`, unweighted and directed.
    pub graph: SeqGraph,
    /// Compulsory arcs, sorted.
    pub compulsory: Vec<(VertexId, VertexId)>,
    /// Forced start string, of length `window − 1`.
    pub start: Vec<VertexId>,
    pub window: usize,
}

impl OptionalInstance {
    /// Arcs of `A′` that are not compulsory, sorted.
    pub fn optional_arcs(&self) -> Vec<(VertexId, VertexId)> {
        let c: BTreeSet<_> = self.compulsory.iter().copied().collect();
        self.graph
            .edges()
            .map(|(u, v, _)| (u, v))
            .filter(|a| !c.contains(a))
            .collect()
    }

    /// Whether `x` solves the instance.
    pub fn accepts(&self, x: &Sequence) -> bool {
        let t = x.tokens();
        if !t.starts_with(&self.start) || t.iter().any(|&v| v >= self.graph.n()) {
            return false;
        }
        let mut seen = HashSet::new();
        for i in 0..t.len() {
            for j in i + 1..t.len().min(i + self.window) {
                if !self.graph.has_edge(t[i], t[j]) {
                    return false;
                }
                seen.insert((t[i], t[j]));
            }
        }
        self.compulsory.iter().all(|a| seen.contains(a))
    }
}

/// Layout of the padding grid: `v₀ = 2v`, `v₁ = 2v + 1`, then
/// `x^i_p` for `p ∈ 1..=2n+1`, `i ∈ 1..=w−2`.
struct Grid {
    n: usize,
    k: usize,
}

impl Grid {
    fn x(&self, i: usize, p: usize) -> VertexId {
        2 * self.n + (p - 1) * self.k + (i - 1)
    }
}

/// Builds the OptionalRealizable instance whose solutions correspond to
/// Hamiltonian paths of `g` from its first source vertex.
///
/// Each vertex `v` becomes a compulsory arc `v₀ → v₁`; arc `(u, v)` of
/// `g` becomes the optional arc `u₁ → v₀`; a grid of `2n + 1` columns of
/// `w − 2` padding vertices keeps consecutive path vertices `w − 1` apart.
pub fn optional_instance(g: &SeqGraph, w: usize) -> Result<OptionalInstance> {
    require_plain(g, true)?;
    if w < 3 {
        return Err(Error::Precondition(format!("window must be at least 3, got {w}")));
    }
    let n = g.n();
    let s = (0..n)
        .find(|&v| (0..n).all(|u| !g.has_edge(u, v)))
        .ok_or_else(|| Error::Precondition("graph has no source vertex".into()))?;
    let grid = Grid { n, k: w - 2 };
    let mut labels = Vec::with_capacity(2 * n + (2 * n + 1) * grid.k);
    for v in 0..n {
        labels.push(format!("{}_0", g.label(v)));
        labels.push(format!("{}_1", g.label(v)));
    }
    for p in 1..=2 * n + 1 {
        for i in 1..=grid.k {
            labels.push(format!("x{i}_{p}"));
        }
    }
    let mut h = labelled(labels, true, false);
    let mut compulsory = Vec::with_capacity(n);
    for v in 0..n {
        h.add_edge(2 * v, 2 * v + 1)?;
        compulsory.push((2 * v, 2 * v + 1));
    }
    for (u, v, _) in g.edges() {
        h.add_edge(2 * u + 1, 2 * v)?;
    }
    for v in 0..n {
        let (v0, v1) = (2 * v, 2 * v + 1);
        for p in 1..=n {
            for i in 1..=grid.k {
                h.add_edge(grid.x(i, 2 * p - 1), v0)?;
                h.add_edge(v0, grid.x(i, 2 * p))?;
                h.add_edge(grid.x(i, 2 * p), v1)?;
                h.add_edge(v1, grid.x(i, 2 * p + 1))?;
            }
        }
    }
    for p in 1..=2 * n + 1 {
        for i in 1..=grid.k {
            for j in i + 1..=grid.k {
                h.add_edge(grid.x(i, p), grid.x(j, p))?;
            }
            if p <= 2 * n {
                for j in 1..=i {
                    h.add_edge(grid.x(i, p), grid.x(j, p + 1))?;
                }
            }
        }
    }
    let mut start: Vec<_> = (1..=grid.k).map(|i| grid.x(i, 1)).collect();
    start.push(2 * s);
    Ok(OptionalInstance {
        graph: h,
        compulsory,
        start,
        window: w,
    })
}

/// The solution prescribed for a Hamiltonian path `path` of the source
/// graph: blocks `X^p = x_{2p−1} v⁰ x_{2p} v¹` for the p-th path vertex,
/// closed by the column `x_{2n+1}`.
pub fn optional_witness(inst: &OptionalInstance, path: &[VertexId]) -> Result<Sequence> {
    let k = inst.window - 2;
    let n = path.len();
    let grid = Grid { n, k };
    if grid.x(1, 1) + (2 * n + 1) * k != inst.graph.n() {
        return Err(Error::Precondition("path length differs from the instance size".into()));
    }
    let mut x = Vec::with_capacity((2 * n + 1) * k + 2 * n);
    for (p, &v) in path.iter().enumerate() {
        let p = p + 1;
        x.extend((1..=k).map(|i| grid.x(i, 2 * p - 1)));
        x.push(2 * v);
        x.extend((1..=k).map(|i| grid.x(i, 2 * p)));
        x.push(2 * v + 1);
    }
    x.extend((1..=k).map(|i| grid.x(i, 2 * n + 1)));
    let x = Sequence::new(x);
    if !inst.accepts(&x) {
        return Err(Error::WitnessRejected("padding-grid walk breaks the instance".into()));
    }
    Ok(x)
}

/// Breadth-first search for a shortest solution of length at most
/// `max_len`, over states (window suffix, compulsory arcs covered).
pub fn optional_solve(inst: &OptionalInstance, max_len: usize, budget: u64) -> Result<FirstOutcome> {
    let g = &inst.graph;
    let w = inst.window;
    let cidx = |a: (VertexId, VertexId)| inst.compulsory.iter().position(|&c| c == a);
    let full: u128 = if inst.compulsory.len() >= 128 {
        return Err(Error::SizeLimit(127));
    } else {
        (1u128 << inst.compulsory.len()) - 1
    };
    let step = |suffix: &[VertexId], cov: u128, v: VertexId| -> Option<u128> {
        let mut cov = cov;
        for &t in suffix {
            if !g.has_edge(t, v) {
                return None;
            }
            if let Some(i) = cidx((t, v)) {
                cov |= 1 << i;
            }
        }
        Some(cov)
    };
    let tail = |x: &[VertexId]| x[x.len().saturating_sub(w - 1)..].to_vec();
    let mut cov = 0u128;
    for (i, &v) in inst.start.iter().enumerate() {
        cov = match step(&inst.start[i.saturating_sub(w - 1)..i], cov, v) {
            Some(c) => c,
            None => return Ok(FirstOutcome::Exhausted),
        };
    }
    if cov == full {
        return Ok(FirstOutcome::Found(Sequence::new(inst.start.clone())));
    }
    // nodes: (parent, symbol); frontier entries carry the state
    let mut nodes: Vec<(usize, VertexId)> = Vec::new();
    let mut seen: HashSet<(Vec<VertexId>, u128)> = HashSet::new();
    let root = tail(&inst.start);
    seen.insert((root.clone(), cov));
    let mut frontier = vec![(root, cov, usize::MAX)];
    let mut len = inst.start.len();
    let mut spent = 0u64;
    while !frontier.is_empty() {
        if len >= max_len {
            return Ok(FirstOutcome::Inconclusive);
        }
        let mut next = Vec::new();
        for (suf, cov, id) in frontier {
            for v in 0..g.n() {
                spent += 1;
                if spent > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                let Some(nc) = step(&suf, cov, v) else { continue };
                let mut ns = suf.clone();
                ns.push(v);
                let ns = tail(&ns);
                if !seen.insert((ns.clone(), nc)) {
                    continue;
                }
                nodes.push((id, v));
                let me = nodes.len() - 1;
                if nc == full {
                    let mut rest = Vec::new();
                    let mut i = me;
                    while i != usize::MAX {
                        rest.push(nodes[i].1);
                        i = nodes[i].0;
                    }
                    rest.reverse();
                    let mut x = inst.start.clone();
                    x.extend(rest);
                    return Ok(FirstOutcome::Found(Sequence::new(x)));
                }
                next.push((ns, nc, me));
            }
        }
        frontier = next;
        len += 1;
    }
    Ok(FirstOutcome::Exhausted)
}

/// The DU reduction: the instance graph plus separator vertices, with
/// the forced prefix `Z′` whose presence makes every optional arc free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DuChain {
    pub graph: SeqGraph,
    /// `Z′ = Z P`, where `Z` lists each optional arc `u z v` between
    /// blocks of `w` fresh `y` separators.
    pub prefix: Sequence,
    /// Number of original (instance) vertices; separators follow them.
    pub base: usize,
}

/// Adds `w(m + 1) + m` separators for the `m` optional arcs. The output
/// is `A′` together with every separator arc realized by `Z′`.
pub fn du_chain(inst: &OptionalInstance) -> Result<DuChain> {
    let w = inst.window;
    let base = inst.graph.n();
    let opt = inst.optional_arcs();
    let m = opt.len();
    let y = |p: usize, i: usize| base + (p - 1) * w + (i - 1);
    let z = |p: usize| base + (m + 1) * w + (p - 1);
    let mut labels = inst.graph.labels().to_vec();
    for p in 1..=m + 1 {
        labels.extend((1..=w).map(|i| format!("y{p}_{i}")));
    }
    labels.extend((1..=m).map(|p| format!("z{p}")));
    let total = labels.len();
    let mut zs = Vec::with_capacity((m + 1) * w + 3 * m + w - 1);
    for (p, &(u, v)) in opt.iter().enumerate() {
        let p = p + 1;
        zs.extend((1..=w).map(|i| y(p, i)));
        zs.extend([u, z(p), v]);
    }
    zs.extend((1..=w).map(|i| y(m + 1, i)));
    zs.extend(&inst.start);
    let prefix = Sequence::new(zs);
    let mut h = labelled(labels, true, false);
    for (u, v, _) in inst.graph.edges() {
        h.add_edge(u, v)?;
    }
    let t = prefix.tokens();
    for i in 0..t.len() {
        for j in i + 1..t.len().min(i + w) {
            if (t[i] >= base || t[j] >= base) && !h.has_edge(t[i], t[j]) {
                h.add_edge(t[i], t[j])?;
            }
        }
    }
    debug_assert_eq!(h.n(), total);
    Ok(DuChain { graph: h, prefix, base })
}

/// Arcs realized by `x` at window `w`.
#[cfg(test)]
fn realized(x: &Sequence, w: usize) -> BTreeSet<(VertexId, VertexId)> {
    let t = x.tokens();
    (0..t.len())
        .flat_map(|i| (i + 1..t.len().min(i + w)).map(move |j| (t[i], t[j])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::realizes;
    use crate::oracle::{first, Constraints, DEFAULT_BUDGET};

    fn digraph(n: usize, arcs: &[(usize, usize)]) -> SeqGraph {
        let mut g = SeqGraph::new(n, true, false);
        for &(u, v) in arcs {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    #[test]
    fn grid_size() {
        // four vertices with source s, as in the worked example
        let g = digraph(4, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 1)]);
        let inst = optional_instance(&g, 6).unwrap();
        assert_eq!(inst.graph.n(), 2 * 4 + 4 * 9);
        assert_eq!(inst.compulsory, vec![(0, 1), (2, 3), (4, 5), (6, 7)]);
        assert_eq!(inst.start.len(), 5);
        assert_eq!(inst.start[4], 0);
        for (u, v) in [(1, 2), (1, 4), (3, 4), (5, 6), (7, 2)] {
            assert!(inst.graph.has_edge(u, v), "({u}, {v})");
        }
    }

    #[test]
    fn path_instance_is_solved_by_the_grid_walk() {
        let g = digraph(3, &[(0, 1), (1, 2)]);
        let inst = optional_instance(&g, 3).unwrap();
        let x = optional_witness(&inst, &[0, 1, 2]).unwrap();
        // seven grid columns of w − 2 = 1 symbol, plus the six path symbols
        assert_eq!(x.len(), 7 + 6);
        let found = optional_solve(&inst, 40, DEFAULT_BUDGET).unwrap();
        let y = found.witness().expect("path is Hamiltonian");
        assert!(inst.accepts(y));
        assert!(y.len() <= x.len());
    }

    #[test]
    fn non_hamiltonian_instance_is_exhausted() {
        let g = digraph(3, &[(0, 1), (0, 2)]);
        let inst = optional_instance(&g, 3).unwrap();
        assert_eq!(
            optional_solve(&inst, 200, DEFAULT_BUDGET).unwrap(),
            FirstOutcome::Exhausted
        );
    }

    #[test]
    fn instance_needs_a_source_and_a_wide_window() {
        assert!(matches!(
            optional_instance(&digraph(2, &[(0, 1), (1, 0)]), 3),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            optional_instance(&digraph(2, &[(0, 1)]), 2),
            Err(Error::Precondition(_))
        ));
    }

    fn tiny() -> OptionalInstance {
        let mut g = SeqGraph::new(3, true, false);
        for (u, v) in [(0, 1), (1, 2), (0, 2)] {
            g.add_edge(u, v).unwrap();
        }
        OptionalInstance {
            graph: g,
            compulsory: vec![(0, 1), (1, 2)],
            start: vec![0, 1],
            window: 3,
        }
    }

    #[test]
    fn tiny_chain_structure() {
        let c = du_chain(&tiny()).unwrap();
        assert_eq!(c.graph.n() - c.base, 3 * (1 + 1) + 1);
        let sources: Vec<_> = (0..c.graph.n())
            .filter(|&v| (0..c.graph.n()).all(|u| !c.graph.has_edge(u, v)))
            .collect();
        assert_eq!(sources, vec![c.graph.vertex_by_label("y1_1").unwrap()]);
        assert_eq!(c.prefix.len(), 3 + 3 + 3 + 2);
        // every arc realized by the prefix is in the graph
        assert!(realized(&c.prefix, 3).iter().all(|&(u, v)| c.graph.has_edge(u, v)));
    }

    #[test]
    fn separator_arcs_follow_the_listed_rules() {
        let g = digraph(3, &[(0, 1), (1, 2)]);
        let inst = optional_instance(&g, 4).unwrap();
        let c = du_chain(&inst).unwrap();
        let m = inst.optional_arcs().len();
        let id = |s: String| c.graph.vertex_by_label(&s).unwrap();
        for p in 1..=m {
            for i in 1..=4 {
                for j in 1..=4 {
                    assert_eq!(
                        c.graph.has_edge(id(format!("y{p}_{i}")), id(format!("y{p}_{j}"))),
                        i < j
                    );
                    let cross = c.graph.has_edge(id(format!("y{p}_{i}")), id(format!("y{}_{j}", p + 1)));
                    assert_eq!(cross, j + 4 <= i, "y{p}_{i} -> y{}_{j}", p + 1);
                }
                assert_eq!(c.graph.has_edge(id(format!("y{p}_{i}")), id(format!("z{p}"))), i >= 3);
            }
        }
    }

    #[test]
    fn yes_instance_extends_the_prefix() {
        let g = digraph(3, &[(0, 1), (1, 2)]);
        let inst = optional_instance(&g, 3).unwrap();
        let c = du_chain(&inst).unwrap();
        let cons = Constraints {
            prefix: c.prefix.tokens().to_vec(),
            allow: None,
        };
        let horizon = c.prefix.len() + 4 * c.graph.n();
        let out = first(&c.graph, 3, horizon, &cons, DEFAULT_BUDGET).unwrap();
        let x = out.witness().expect("Hamiltonian source graph");
        assert!(realizes(x, &c.graph, 3));
        let mut expect = c.prefix.tokens().to_vec();
        expect.extend(&optional_witness(&inst, &[0, 1, 2]).unwrap().tokens()[2..]);
        assert!(realizes(&Sequence::new(expect), &c.graph, 3));
    }

    #[test]
    fn no_instance_is_not_realized_after_the_prefix() {
        let g = digraph(3, &[(0, 1), (0, 2)]);
        let inst = optional_instance(&g, 3).unwrap();
        let c = du_chain(&inst).unwrap();
        let cons = Constraints {
            prefix: c.prefix.tokens().to_vec(),
            allow: None,
        };
        let horizon = c.prefix.len() + 4 * c.graph.n();
        let out = first(&c.graph, 3, horizon, &cons, DEFAULT_BUDGET).unwrap();
        assert!(out.witness().is_none());
    }
}
