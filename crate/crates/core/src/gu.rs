//! Undirected unweighted realizability at any window size through the
//! auxiliary graph H^(k) on length-k clique strings, k = w − 1.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::builder::realizes;
use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::graph::{SeqGraph, Sequence, VertexId};

/// Default cap on the number of auxiliary vertices.
pub const DEFAULT_AUX_CAP: usize = 10_000_000;

/// H^(k): vertices are length-k strings whose symbols are pairwise adjacent
/// in G (repeats need a loop); `{u, v}` is an edge when `u[1..] == v[..k-1]`
/// and `{u[0], v[k-1]}` is an edge of G.
#[derive(Debug, Clone)]
pub struct AuxGraph {
    pub k: usize,
    /// Lexicographically sorted strings.
    pub vertices: Vec<Vec<VertexId>>,
    /// Each unordered edge once, stored as `(forward tail, forward head)`.
    /// A pair that is a shift in both directions appears twice.
    pub edges: Vec<(usize, usize)>,
    index: HashMap<Vec<VertexId>, usize>,
}

impl AuxGraph {
    pub fn vertex_id(&self, s: &[VertexId]) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, e));
            if a != b {
                adj[b].push((a, e));
            }
        }
        adj
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(u, _) in &adj[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = id;
                        members.push(u);
                        stack.push(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Graphviz rendering with labels from `g`.
    pub fn to_dot(&self, g: &SeqGraph) -> String {
        let name = |s: &[VertexId]| s.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join("");
        let mut out = String::from("graph H {\n");
        for (i, s) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", name(s));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -- n{b};");
        }
        out.push_str("}\n");
        out
    }
}

fn require_gu(g: &SeqGraph) -> Result<()> {
    if g.is_directed() || g.is_weighted() {
        return Err(Error::WrongVariant("undirected unweighted"));
    }
    Ok(())
}

pub fn build_aux(g: &SeqGraph, k: usize) -> Result<AuxGraph> {
    build_aux_capped(g, k, DEFAULT_AUX_CAP)
}

pub fn build_aux_capped(g: &SeqGraph, k: usize, cap: usize) -> Result<AuxGraph> {
    require_gu(g)?;
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let adj = g.out_adjacency();
    let mut vertices: Vec<Vec<VertexId>> = Vec::new();
    // Depth-first extension; candidates for the next symbol are the common
    // neighbours of everything placed so far, visited in ascending order.
    let mut cur: Vec<VertexId> = Vec::with_capacity(k);
    fn extend(
        g: &SeqGraph,
        adj: &[Vec<VertexId>],
        k: usize,
        cur: &mut Vec<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
        cap: usize,
    ) -> Result<()> {
        if cur.len() == k {
            if out.len() >= cap {
                return Err(Error::SizeLimit(cap));
            }
            out.push(cur.clone());
            return Ok(());
        }
        let cands: Vec<VertexId> = match cur.last() {
            None => (0..g.n()).collect(),
            Some(&last) => adj[last].clone(),
        };
        for v in cands {
            if cur.iter().all(|&y| g.has_edge(y, v)) {
                cur.push(v);
                extend(g, adj, k, cur, out, cap)?;
                cur.pop();
            }
        }
        Ok(())
    }
    extend(g, &adj, k, &mut cur, &mut vertices, cap)?;
    let index: HashMap<Vec<VertexId>, usize> = vertices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let mut edges = BTreeSet::new();
    let mut next = Vec::with_capacity(k);
    for (i, u) in vertices.iter().enumerate() {
        for &c in &adj[u[0]] {
            next.clear();
            next.extend_from_slice(&u[1..]);
            next.push(c);
            if let Some(&j) = index.get(&next) {
                edges.insert((i, j));
            }
        }
    }
    Ok(AuxGraph {
        k,
        vertices,
        edges: edges.into_iter().collect(),
        index,
    })
}

/// Edges of G (as canonical keys) covered by an aux vertex.
fn vertex_cover(g: &SeqGraph, s: &[VertexId], out: &mut BTreeSet<(VertexId, VertexId)>) {
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            out.insert(g.key(s[i], s[j]));
        }
    }
}

/// For each edge of G, the aux vertices and aux edges covering it.
#[derive(Debug, Clone, Default)]
pub struct CoverMap {
    pub by_vertex: HashMap<(VertexId, VertexId), Vec<usize>>,
    pub by_edge: HashMap<(VertexId, VertexId), Vec<usize>>,
}

impl CoverMap {
    pub fn new(g: &SeqGraph, h: &AuxGraph) -> Self {
        let mut m = CoverMap::default();
        let mut tmp = BTreeSet::new();
        for (i, s) in h.vertices.iter().enumerate() {
            tmp.clear();
            vertex_cover(g, s, &mut tmp);
            for &e in &tmp {
                m.by_vertex.entry(e).or_default().push(i);
            }
        }
        for (i, &(a, b)) in h.edges.iter().enumerate() {
            let e = g.key(h.vertices[a][0], h.vertices[b][h.k - 1]);
            m.by_edge.entry(e).or_default().push(i);
        }
        m
    }
}

/// Edges of G covered by the aux subgraph induced on `comp` (which must be
/// a union of components).
fn covered_by_component(g: &SeqGraph, h: &AuxGraph, comp: &[usize], member: &[bool]) -> BTreeSet<(VertexId, VertexId)> {
    let mut cov = BTreeSet::new();
    for &i in comp {
        vertex_cover(g, &h.vertices[i], &mut cov);
    }
    for &(a, b) in &h.edges {
        if member[a] {
            cov.insert(g.key(h.vertices[a][0], h.vertices[b][h.k - 1]));
        }
    }
    cov
}

/// Concatenates the walk's additions: a forward step appends one symbol,
/// a backward step appends the whole next string. Forward is preferred
/// when a step qualifies both ways.
pub fn underlying_sequence(g: &SeqGraph, walk: &[Vec<VertexId>]) -> Result<Sequence> {
    let first = walk.first().ok_or(Error::EmptySequence)?;
    let k = first.len();
    let mut out = first.clone();
    for (i, pair) in walk.windows(2).enumerate() {
        let (y, z) = (&pair[0], &pair[1]);
        if y.len() != k || z.len() != k {
            return Err(Error::NotAWalk(i, i + 1));
        }
        if y[1..] == z[..k - 1] && g.has_edge(y[0], z[k - 1]) {
            out.push(z[k - 1]);
        } else if z[1..] == y[..k - 1] && g.has_edge(z[0], y[k - 1]) {
            out.extend_from_slice(z);
        } else {
            return Err(Error::NotAWalk(i, i + 1));
        }
    }
    Ok(Sequence::new(out))
}

/// Walk from `start` crossing every edge of its component and returning.
fn covering_walk(h: &AuxGraph, start: usize) -> Vec<usize> {
    let adj = h.adjacency();
    let mut seen = vec![false; h.vertices.len()];
    let mut used = vec![false; h.edges.len()];
    let mut walk = vec![start];
    seen[start] = true;
    let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
    while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
        if *pos < adj[v].len() {
            let (u, e) = adj[v][*pos];
            *pos += 1;
            if used[e] {
                continue;
            }
            used[e] = true;
            walk.push(u);
            if seen[u] {
                if u != v {
                    walk.push(v);
                }
            } else {
                seen[u] = true;
                stack.push((u, 0));
            }
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                walk.push(p);
            }
        }
    }
    walk
}

/// Sequences of length below `w − 1` whose symbols are pairwise adjacent.
fn short_realization(g: &SeqGraph, w: usize) -> Option<Sequence> {
    let max_len = w.saturating_sub(2);
    if g.n() > max_len {
        return None;
    }
    fn dfs(g: &SeqGraph, w: usize, max_len: usize, cur: &mut Vec<VertexId>) -> Option<Sequence> {
        if !cur.is_empty() {
            let x = Sequence::new(cur.clone());
            if realizes(&x, g, w) {
                return Some(x);
            }
        }
        if cur.len() == max_len {
            return None;
        }
        for v in 0..g.n() {
            if cur.iter().all(|&y| g.has_edge(y, v)) {
                cur.push(v);
                if let Some(x) = dfs(g, w, max_len, cur) {
                    return Some(x);
                }
                cur.pop();
            }
        }
        None
    }
    dfs(g, w, max_len, &mut Vec::new())
}

/// A verified `w`-realization of `g`, or `None` when none exists.
pub fn gu_realizable(g: &SeqGraph, w: usize) -> Result<Option<Sequence>> {
    gu_realizable_capped(g, w, DEFAULT_AUX_CAP)
}

pub fn gu_realizable_capped(g: &SeqGraph, w: usize, cap: usize) -> Result<Option<Sequence>> {
    require_gu(g)?;
    if w < 2 {
        return Err(Error::InvalidWindow(w));
    }
    if let Some(x) = short_realization(g, w) {
        return Ok(Some(x));
    }
    if g.n() == 0 || (g.n() >= 2 && g.has_edge_free_vertex()) {
        return Ok(None);
    }
    let k = w - 1;
    let h = build_aux_capped(g, k, cap)?;
    let all: BTreeSet<(VertexId, VertexId)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    let mut member = vec![false; h.vertices.len()];
    for comp in h.components() {
        for &i in &comp {
            member[i] = true;
        }
        let cov = covered_by_component(g, &h, &comp, &member);
        for &i in &comp {
            member[i] = false;
        }
        if cov != all {
            continue;
        }
        let walk: Vec<Vec<VertexId>> = covering_walk(&h, comp[0])
            .into_iter()
            .map(|i| h.vertices[i].clone())
            .collect();
        let x = underlying_sequence(g, &walk)?;
        if !realizes(&x, g, w) {
            return Err(Error::WitnessRejected(x.to_string()));
        }
        return Ok(Some(x));
    }
    Ok(None)
}

/// Exact number of `w`-realizations: infinite as soon as a covering
/// component of H^(w−1) has an edge (walk back and forth along it);
/// otherwise every realization has length at most `w − 1`.
pub fn gu_count(g: &SeqGraph, w: usize) -> Result<BigCount> {
    gu_count_capped(g, w, DEFAULT_AUX_CAP)
}

pub fn gu_count_capped(g: &SeqGraph, w: usize, cap: usize) -> Result<BigCount> {
    if gu_realizable_capped(g, w, cap)?.is_none() {
        return Ok(BigCount::zero());
    }
    let h = build_aux_capped(g, w - 1, cap)?;
    let all: BTreeSet<(VertexId, VertexId)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    let mut member = vec![false; h.vertices.len()];
    let mut comp_of = vec![0usize; h.vertices.len()];
    let comps = h.components();
    for (c, comp) in comps.iter().enumerate() {
        for &i in comp {
            comp_of[i] = c;
        }
    }
    let mut has_edge = vec![false; comps.len()];
    for &(a, _) in &h.edges {
        has_edge[comp_of[a]] = true;
    }
    for (c, comp) in comps.iter().enumerate() {
        if !has_edge[c] {
            continue;
        }
        for &i in comp {
            member[i] = true;
        }
        let cov = covered_by_component(g, &h, comp, &member);
        for &i in comp {
            member[i] = false;
        }
        if cov == all {
            return Ok(BigCount::Infinite);
        }
    }
    gu_count_bounded(g, w, w - 1)
}

/// Number of `w`-realizations of length at most `max_len`, by depth-first
/// enumeration that cuts any prefix realizing a non-edge.
pub fn gu_count_bounded(g: &SeqGraph, w: usize, max_len: usize) -> Result<BigCount> {
    require_gu(g)?;
    if w < 2 {
        return Err(Error::InvalidWindow(w));
    }
    let n = g.n();
    let idx = g.edge_index();
    let m = g.edge_count();
    let mut hits = vec![0u32; m];
    let mut covered = 0usize;
    let mut uses = vec![0u32; n];
    let mut distinct = 0usize;
    let mut cur: Vec<VertexId> = Vec::new();

    struct St<'a> {
        n: usize,
        w: usize,
        max_len: usize,
        m: usize,
        idx: &'a crate::graph::EdgeIndex,
        hits: &'a mut Vec<u32>,
        covered: &'a mut usize,
        uses: &'a mut Vec<u32>,
        distinct: &'a mut usize,
        cur: &'a mut Vec<VertexId>,
    }
    fn go(s: &mut St<'_>) -> BigUint {
        let mut acc = if !s.cur.is_empty() && *s.covered == s.m && *s.distinct == s.n {
            BigUint::one()
        } else {
            BigUint::zero()
        };
        if s.cur.len() == s.max_len {
            return acc;
        }
        let lo = s.cur.len().saturating_sub(s.w - 1);
        'next: for v in 0..s.n {
            let mut es = Vec::with_capacity(s.w);
            for &t in &s.cur[lo..] {
                match s.idx.get(t, v) {
                    Some(e) => es.push(e),
                    None => continue 'next,
                }
            }
            for &e in &es {
                if s.hits[e] == 0 {
                    *s.covered += 1;
                }
                s.hits[e] += 1;
            }
            if s.uses[v] == 0 {
                *s.distinct += 1;
            }
            s.uses[v] += 1;
            s.cur.push(v);
            acc += go(s);
            s.cur.pop();
            s.uses[v] -= 1;
            if s.uses[v] == 0 {
                *s.distinct -= 1;
            }
            for &e in &es {
                s.hits[e] -= 1;
                if s.hits[e] == 0 {
                    *s.covered -= 1;
                }
            }
        }
        acc
    }
    let mut st = St {
        n,
        w,
        max_len,
        m,
        idx: &idx,
        hits: &mut hits,
        covered: &mut covered,
        uses: &mut uses,
        distinct: &mut distinct,
        cur: &mut cur,
    };
    Ok(BigCount::Finite(go(&mut st)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ugraph(n: usize, e: &[(usize, usize)]) -> SeqGraph {
        let mut g = SeqGraph::new(n, false, false);
        for &(u, v) in e {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    /// loop at 1, edges {1,2}, {1,3}, with 1,2,3 as ids 0,1,2
    fn looped_star() -> SeqGraph {
        ugraph(3, &[(0, 0), (0, 1), (0, 2)])
    }

    fn strings(h: &AuxGraph) -> Vec<String> {
        h.vertices
            .iter()
            .map(|s| s.iter().map(|v| (v + 1).to_string()).collect())
            .collect()
    }

    #[test]
    fn aux_vertices_of_a_looped_star() {
        let g = looped_star();
        let h2 = build_aux(&g, 2).unwrap();
        assert_eq!(strings(&h2), ["11", "12", "13", "21", "31"]);
        let s = |t: &[usize]| h2.vertex_id(t).unwrap();
        assert!(h2.edges.contains(&(s(&[0, 0]), s(&[0, 0]))));
        let h3 = build_aux(&g, 3).unwrap();
        assert_eq!(strings(&h3), ["111", "112", "113", "121", "131", "211", "311"]);
    }

    #[test]
    fn single_edge_has_no_aux_edge_at_k2() {
        let h = build_aux(&ugraph(2, &[(0, 1)]), 2).unwrap();
        assert_eq!(h.vertices, vec![vec![0, 1], vec![1, 0]]);
        assert!(h.edges.is_empty());
    }

    #[test]
    fn k1_aux_graph_is_g() {
        let g = ugraph(3, &[(0, 1), (1, 2), (2, 2)]);
        let h = build_aux(&g, 1).unwrap();
        assert_eq!(h.edges, vec![(0, 1), (1, 0), (1, 2), (2, 1), (2, 2)]);
    }

    #[test]
    fn walk_gives_its_underlying_string() {
        let g = looped_star();
        let walk: Vec<Vec<usize>> = ["111", "211", "121", "112", "111", "111", "113", "131", "311", "111"]
            .iter()
            .map(|s| s.bytes().map(|b| (b - b'1') as usize).collect())
            .collect();
        let x = underlying_sequence(&g, &walk).unwrap();
        let text: String = x.tokens().iter().map(|v| (v + 1).to_string()).collect();
        assert_eq!(text, "11121112111211113111");
        assert!(realizes(&x, &g, 4));
    }

    #[test]
    fn underlying_sequence_edge_cases() {
        let g = ugraph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(underlying_sequence(&g, &[vec![0, 1, 2]]).unwrap().tokens(), &[0, 1, 2]);
        assert_eq!(
            underlying_sequence(&g, &[vec![0, 1], vec![1, 2]]).unwrap().tokens(),
            &[0, 1, 2]
        );
        assert_eq!(
            underlying_sequence(&g, &[vec![0, 1], vec![0, 2]]),
            Err(Error::NotAWalk(0, 1))
        );
    }

    #[test]
    fn realizability_examples() {
        assert_eq!(gu_realizable(&ugraph(3, &[(0, 1), (1, 2)]), 3).unwrap(), None);
        let k3 = ugraph(3, &[(0, 1), (1, 2), (0, 2)]);
        let x = gu_realizable(&k3, 3).unwrap().unwrap();
        assert!(realizes(&x, &k3, 3));
        let x = gu_realizable(&looped_star(), 4).unwrap().unwrap();
        assert!(realizes(&x, &looped_star(), 4));
        let single = SeqGraph::new(1, false, false);
        for w in 2..6 {
            assert_eq!(gu_realizable(&single, w).unwrap().unwrap().tokens(), &[0]);
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        let g = ugraph(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)]);
        assert_eq!(build_aux_capped(&g, 3, 10).unwrap_err(), Error::SizeLimit(10));
    }

    #[test]
    fn bounded_counts() {
        assert_eq!(gu_count_bounded(&ugraph(3, &[(0, 1), (1, 2)]), 3, 8).unwrap(), 0);
        assert_eq!(gu_count_bounded(&SeqGraph::new(1, false, false), 3, 5).unwrap(), 1);
        // K_3 at w = 3: six permutations, each extendable once by its first symbol
        assert_eq!(
            gu_count_bounded(&ugraph(3, &[(0, 1), (1, 2), (0, 2)]), 3, 4).unwrap(),
            12
        );
    }

    #[test]
    fn exact_counts() {
        assert_eq!(gu_count(&ugraph(2, &[(0, 1)]), 3).unwrap(), 2);
        assert_eq!(gu_count(&SeqGraph::new(1, false, false), 4).unwrap(), 1);
        assert!(gu_count(&ugraph(3, &[(0, 1), (1, 2), (0, 2)]), 3)
            .unwrap()
            .is_infinite());
        assert_eq!(gu_count(&ugraph(3, &[(0, 1), (1, 2)]), 3).unwrap(), 0);
    }

    /// Finite answers must already hold at a much longer horizon, and
    /// infinite ones must show longer realizations there.
    #[test]
    fn exact_counts_match_bounded_enumeration() {
        let slots: Vec<(usize, usize)> = (0..3).flat_map(|u| (u..3).map(move |v| (u, v))).collect();
        for n in 1..=3 {
            let slots: Vec<_> = slots.iter().copied().filter(|&(u, v)| u < n && v < n).collect();
            for mask in 0u32..(1 << slots.len()) {
                let e: Vec<_> = (0..slots.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| slots[i])
                    .collect();
                let g = ugraph(n, &e);
                for w in 2..=4 {
                    let long = gu_count_bounded(&g, w, 9).unwrap();
                    match gu_count(&g, w).unwrap() {
                        BigCount::Infinite => assert_ne!(long, gu_count_bounded(&g, w, w - 1).unwrap(), "{e:?} w={w}"),
                        c => assert_eq!(c, long, "{e:?} w={w}"),
                    }
                }
            }
        }
    }
}
