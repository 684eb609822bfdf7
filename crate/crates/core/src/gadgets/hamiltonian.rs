//! Weighted gadgets reducing Hamiltonian path (between the two pendant
//! vertices `s` and `t`) to DW and GW realizability at window `w ≥ 3`.
//!
//! With `k = w − 2`, a realization is forced to read
//! `s₀′ s₀^k`, then `a u^k u′ u^k` for each vertex along a path, then a
//! queue `b^w v^k b u^k` for every ordered adjacent pair not on the path,
//! closed by `b^w`. Weights below count exactly those pairs.

use super::{choose2, labelled, require_plain};
use crate::builder::realizes;
use crate::error::{Error, Result};
use crate::graph::{SeqGraph, Sequence, VertexId};

const A: VertexId = 0;
const B: VertexId = 1;
const S0: VertexId = 2;
const S0P: VertexId = 3;

fn vid(u: VertexId) -> VertexId {
    4 + 2 * u
}

fn vid_prime(u: VertexId) -> VertexId {
    5 + 2 * u
}

fn degrees(g: &SeqGraph) -> Vec<u64> {
    let mut d = vec![0u64; g.n()];
    for (u, v, _) in g.edges() {
        d[u] += 1;
        d[v] += 1;
    }
    d
}

/// The first two degree-1 vertices, taken as `s` and `t`. Isolated
/// vertices are rejected: the gadget weights need every degree ≥ 1.
pub fn pendant_ends(g: &SeqGraph) -> Result<(VertexId, VertexId)> {
    require_plain(g, false)?;
    let d = degrees(g);
    if let Some(v) = (0..g.n()).find(|&v| d[v] == 0) {
        return Err(Error::Precondition(format!("vertex {v} is isolated")));
    }
    let mut ends = (0..g.n()).filter(|&v| d[v] == 1);
    match (ends.next(), ends.next()) {
        (Some(s), Some(t)) => Ok((s, t)),
        _ => Err(Error::Precondition("graph needs two vertices of degree 1".into())),
    }
}

/// Arc list `(u, v, π)` of the directed gadget; zero weights included.
fn arcs(g: &SeqGraph, w: usize) -> Result<Vec<(VertexId, VertexId, u64)>> {
    if w < 3 {
        return Err(Error::Precondition(format!("window must be at least 3, got {w}")));
    }
    let (s, t) = pendant_ends(g)?;
    let k = (w - 2) as u64;
    let (ck, ck1, cw) = (choose2(k), choose2(k + 1), choose2(w as u64));
    let d = degrees(g);
    let din = |u: VertexId| if u == s { d[u] } else { d[u] - 1 };
    let dout = |u: VertexId| if u == t { d[u] } else { d[u] - 1 };
    // ordered adjacent pairs left for the queue
    let q = 2 * g.edge_count() as u64 - (g.n() as u64 - 1);
    let mut out = vec![
        (S0P, S0, k),
        (S0, S0, ck),
        (S0, A, k),
        (S0P, A, 1),
        (S0, vid(s), ck1),
        (vid(t), B, ck1),
        (A, B, k + 1),
        (B, B, (q + 1) * cw + 2 * q),
    ];
    for u in 0..g.n() {
        let (x, xp) = (vid(u), vid_prime(u));
        let delta = din(u) + dout(u);
        out.extend([
            (x, x, (delta + 2) * ck + ck1),
            (x, xp, k),
            (xp, x, k),
            (A, x, k),
            (x, A, k),
            (A, xp, 1),
            (xp, A, 1),
            (B, x, dout(u) * (cw - 1) + din(u) * k),
            (x, B, din(u) * (cw - 1) + dout(u) * k),
        ]);
    }
    for (u, v, _) in g.edges() {
        out.push((vid(u), vid(v), ck1));
        out.push((vid(v), vid(u), ck1));
    }
    Ok(out)
}

fn gadget(g: &SeqGraph, w: usize, directed: bool) -> Result<SeqGraph> {
    let list = arcs(g, w)?;
    let mut labels: Vec<String> = ["a", "b", "s0", "s0'"].iter().map(|s| s.to_string()).collect();
    for u in 0..g.n() {
        labels.push(g.label(u).to_string());
        labels.push(format!("{}'", g.label(u)));
    }
    let mut h = labelled(labels, directed, true);
    for (u, v, pi) in list {
        h.accumulate(u, v, pi);
    }
    Ok(h)
}

/// Directed weighted gadget: realizable at window `w` iff `g` has a
/// Hamiltonian path between its pendant vertices.
pub fn dw_ham(g: &SeqGraph, w: usize) -> Result<SeqGraph> {
    gadget(g, w, true)
}

/// Undirected version of [`dw_ham`]: orientations dropped, opposite arc
/// weights summed.
pub fn gw_ham(g: &SeqGraph, w: usize) -> Result<SeqGraph> {
    gadget(g, w, false)
}

/// The realization built from a Hamiltonian path `path` from `s` to `t`,
/// checked against [`dw_ham`] before it is returned.
pub fn hamiltonian_witness(g: &SeqGraph, w: usize, path: &[VertexId]) -> Result<Sequence> {
    let (s, t) = pendant_ends(g)?;
    let n = g.n();
    let valid = path.len() == n
        && path.first() == Some(&s)
        && path.last() == Some(&t)
        && path.windows(2).all(|p| g.has_edge(p[0], p[1]))
        && {
            let mut seen = vec![false; n];
            path.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
        };
    if !valid {
        return Err(Error::Precondition("not a Hamiltonian path from s to t".into()));
    }
    let k = w - 2;
    let mut x = vec![S0P];
    x.extend(std::iter::repeat_n(S0, k));
    for &u in path {
        x.push(A);
        x.extend(std::iter::repeat_n(vid(u), k));
        x.push(vid_prime(u));
        x.extend(std::iter::repeat_n(vid(u), k));
    }
    x.push(A);
    let on_path: Vec<(VertexId, VertexId)> = path.windows(2).map(|p| (p[0], p[1])).collect();
    for (u, v, _) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            if on_path.contains(&(a, b)) {
                continue;
            }
            x.extend(std::iter::repeat_n(B, w));
            x.extend(std::iter::repeat_n(vid(a), k));
            x.push(B);
            x.extend(std::iter::repeat_n(vid(b), k));
        }
    }
    x.extend(std::iter::repeat_n(B, w));
    let x = Sequence::new(x);
    let h = dw_ham(g, w)?;
    if !realizes(&x, &h, w) {
        return Err(Error::WitnessRejected(
            "queue walk does not match gadget weights".into(),
        ));
    }
    Ok(x)
}

/// A Hamiltonian path from `from` to `to` by backtracking, if any.
pub fn find_hamiltonian_path(g: &SeqGraph, from: VertexId, to: VertexId) -> Option<Vec<VertexId>> {
    fn go(g: &SeqGraph, to: VertexId, path: &mut Vec<VertexId>, used: &mut [bool]) -> bool {
        let u = *path.last().unwrap();
        if path.len() == g.n() {
            return u == to;
        }
        for v in 0..g.n() {
            if !used[v] && v != u && g.has_edge(u, v) && (v != to || path.len() + 1 == g.n()) {
                used[v] = true;
                path.push(v);
                if go(g, to, path, used) {
                    return true;
                }
                path.pop();
                used[v] = false;
            }
        }
        false
    }
    let mut used = vec![false; g.n()];
    used[from] = true;
    let mut path = vec![from];
    go(g, to, &mut path, &mut used).then_some(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpcount;

    fn graph(n: usize, edges: &[(usize, usize)]) -> SeqGraph {
        let mut g = SeqGraph::new(n, false, false);
        for &(u, v) in edges {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    /// s–u–v–x–t with the chord {u, x}.
    fn worked_example() -> SeqGraph {
        let mut g = SeqGraph::with_labels(["s", "u", "v", "x", "t"].map(String::from).to_vec(), false, false).unwrap();
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)] {
            g.add_edge(a, b).unwrap();
        }
        g
    }

    #[test]
    fn worked_example_weights() {
        let g = worked_example();
        let h = dw_ham(&g, 4).unwrap();
        let id = |l: &str| h.vertex_by_label(l).unwrap();
        // k = 2: C(k,2) = 1, C(k+1,2) = 3, C(w,2) = 6
        assert_eq!(h.weight(id("s0'"), id("s0")), Some(2));
        assert_eq!(h.weight(id("s0"), id("s0")), Some(1));
        assert_eq!(h.weight(id("s0"), id("s")), Some(3));
        assert_eq!(h.weight(id("a"), id("b")), Some(3));
        // u has degree 3: δ_in = δ_out = 2, loop (2 + 2 + 2)·1 + 3
        assert_eq!(h.weight(id("u"), id("u")), Some(9));
        assert_eq!(h.weight(id("b"), id("u")), Some(2 * 5 + 2 * 2));
        assert_eq!(h.weight(id("u"), id("x")), Some(3));
        assert_eq!(h.weight(id("u"), id("v")), Some(3));
        assert_eq!(h.weight(id("s"), id("u")), Some(3));
        assert_eq!(h.weight(id("s"), id("x")), None);
        // t: δ_in = 0, δ_out = 1, plus the queue-gadget arc
        assert_eq!(h.weight(id("t"), id("b")), Some(2 + 3));
        assert_eq!(h.weight(id("b"), id("t")), Some(5));
        // five edges, path of four arcs: six queued pairs
        assert_eq!(h.weight(id("b"), id("b")), Some(7 * 6 + 12));
        let path = find_hamiltonian_path(&g, 0, 4).unwrap();
        assert_eq!(path, vec![0, 1, 2, 3, 4]);
        let x = hamiltonian_witness(&g, 4, &path).unwrap();
        assert!(realizes(&x, &h, 4));
        for w in 3..=5 {
            assert!(hamiltonian_witness(&g, w, &path).is_ok(), "w = {w}");
        }
    }

    #[test]
    fn undirected_gadget_sums_opposite_arcs() {
        let g = worked_example();
        let d = dw_ham(&g, 3).unwrap();
        let u = gw_ham(&g, 3).unwrap();
        assert_eq!(u.total_weight(), d.total_weight());
        for (a, b, pi) in u.edges() {
            let back = if a == b { 0 } else { d.weight(b, a).unwrap_or(0) };
            assert_eq!(pi, d.weight(a, b).unwrap_or(0) + back);
        }
        let path = find_hamiltonian_path(&g, 0, 4).unwrap();
        let x = hamiltonian_witness(&g, 3, &path).unwrap();
        assert!(realizes(&x, &u, 3));
    }

    #[test]
    fn single_edge_is_realizable() {
        let g = graph(2, &[(0, 1)]);
        for h in [dw_ham(&g, 3).unwrap(), gw_ham(&g, 3).unwrap()] {
            assert!(!dpcount::count(&h, 3, None).unwrap().is_zero());
        }
    }

    #[test]
    fn star_with_pendants_is_not() {
        // centre 0 with three leaves: no Hamiltonian path
        let g = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(find_hamiltonian_path(&g, 1, 2), None);
        assert!(dpcount::count(&dw_ham(&g, 3).unwrap(), 3, None).unwrap().is_zero());
        assert!(dpcount::count(&gw_ham(&g, 3).unwrap(), 3, None).unwrap().is_zero());
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            dw_ham(&graph(3, &[(0, 1), (1, 2), (2, 0)]), 3),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(dw_ham(&graph(2, &[(0, 1)]), 2), Err(Error::Precondition(_))));
        assert_eq!(dw_ham(&graph(2, &[(0, 1), (1, 1)]), 3), Err(Error::SelfLoop(1)));
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert!(hamiltonian_witness(&g, 3, &[0, 2, 1]).is_err());
        assert!(matches!(
            dw_ham(&graph(4, &[(0, 1), (1, 2)]), 3),
            Err(Error::Precondition(_))
        ));
    }
}
