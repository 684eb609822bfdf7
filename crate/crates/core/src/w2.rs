//! Window size 2: exact realizability and counting for all four variants.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::graph::{SeqGraph, Sequence, VertexId};
use crate::multigraph::{eulerian_class, psi, EulerClass};
use crate::scc::scc_condense;

/// Default expansion budget for [`gw2_count`].
pub const DEFAULT_GW2_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Characterization,
    BestFormula,
    Backtracking,
}

impl CountMethod {
    pub fn name(self) -> &'static str {
        match self {
            CountMethod::Characterization => "CHARACTERIZATION",
            CountMethod::BestFormula => "BEST_FORMULA",
            CountMethod::Backtracking => "BACKTRACKING",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct W2CountResult {
    pub count: BigCount,
    pub method: CountMethod,
}

fn require(g: &SeqGraph, directed: bool, weighted: bool) -> Result<()> {
    if g.is_directed() != directed || g.is_weighted() != weighted {
        let want = match (directed, weighted) {
            (false, false) => "undirected unweighted",
            (false, true) => "undirected weighted",
            (true, false) => "directed unweighted",
            (true, true) => "directed weighted",
        };
        return Err(Error::WrongVariant(want));
    }
    Ok(())
}

/// GU: realizable iff connected (a single vertex always is).
pub fn gu2_realizable(g: &SeqGraph) -> Result<bool> {
    require(g, false, false)?;
    Ok(g.is_weakly_connected())
}

/// GU: a lone loop-free vertex has one realization, any other realizable
/// graph has infinitely many (walk back and forth along an edge).
pub fn gu2_count(g: &SeqGraph) -> Result<BigCount> {
    require(g, false, false)?;
    Ok(if !g.is_weakly_connected() {
        BigCount::zero()
    } else if g.n() == 1 && g.edge_count() == 0 {
        BigCount::one()
    } else {
        BigCount::Infinite
    })
}

/// DU: realizable iff G is a simple step, i.e. R⁺(G) is a directed path
/// whose edges all have weight 1.
pub fn du2_realizable(g: &SeqGraph) -> Result<bool> {
    require(g, true, false)?;
    let c = scc_condense(g)?;
    Ok(c.is_path() && c.dag_weights.values().all(|&w| w == 1))
}

/// DU: 0 unless simple step, 1 for a directed path graph, infinite otherwise.
pub fn du2_count(g: &SeqGraph) -> Result<BigCount> {
    if !du2_realizable(g)? {
        return Ok(BigCount::zero());
    }
    let is_path = g.edges().all(|(u, v, _)| u != v) && g.edge_count() + 1 == g.n();
    Ok(if is_path { BigCount::one() } else { BigCount::Infinite })
}

/// DU: a realization of a simple-step graph, walking every component's
/// arcs before crossing to the next component.
pub fn du2_witness(g: &SeqGraph) -> Result<Option<Sequence>> {
    if !du2_realizable(g)? {
        return Ok(None);
    }
    let c = scc_condense(g)?;
    let adj = g.out_adjacency();
    let k = c.components.len();
    // cross[i] = the unique arc from component i to i + 1
    let cross: Vec<(VertexId, VertexId)> = (0..k.saturating_sub(1))
        .map(|i| {
            g.edges()
                .map(|(u, v, _)| (u, v))
                .find(|&(u, v)| c.component_of[u] == i && c.component_of[v] == i + 1)
                .expect("path condensation has a cross arc")
        })
        .collect();
    let mut seq = Vec::new();
    let mut cur = c.components[0][0];
    for (i, comp) in c.components.iter().enumerate() {
        if i > 0 {
            cur = cross[i - 1].1;
        }
        seq.push(cur);
        let inside = |v: VertexId| c.component_of[v] == i;
        for &u in comp {
            for &v in &adj[u] {
                if inside(v) {
                    extend_by_path(&mut seq, &mut cur, u, &adj, &inside);
                    seq.push(v);
                    cur = v;
                }
            }
        }
        if i + 1 < k {
            extend_by_path(&mut seq, &mut cur, cross[i].0, &adj, &inside);
        }
    }
    Ok(Some(Sequence::new(seq)))
}

/// Appends a shortest path from `*cur` to `target` (excluding `*cur`).
fn extend_by_path(
    seq: &mut Vec<VertexId>,
    cur: &mut VertexId,
    target: VertexId,
    adj: &[Vec<VertexId>],
    inside: &dyn Fn(VertexId) -> bool,
) {
    if *cur == target {
        return;
    }
    let mut prev = vec![usize::MAX; adj.len()];
    prev[*cur] = *cur;
    let mut q = VecDeque::from([*cur]);
    while let Some(v) = q.pop_front() {
        if v == target {
            break;
        }
        for &u in &adj[v] {
            if inside(u) && prev[u] == usize::MAX {
                prev[u] = v;
                q.push_back(u);
            }
        }
    }
    let mut path = vec![target];
    let mut v = target;
    while prev[v] != v {
        v = prev[v];
        path.push(v);
    }
    path.pop();
    path.reverse();
    seq.extend_from_slice(&path);
    *cur = target;
}

/// Weighted variants: realizable iff ψ(G) is connected and (semi-)Eulerian,
/// with no edge-free vertex unless G is a single vertex.
pub fn w2_weighted_realizable(g: &SeqGraph) -> Result<bool> {
    let m = psi(g)?;
    if g.n() >= 2 && g.has_edge_free_vertex() {
        return Ok(false);
    }
    Ok(eulerian_class(&m) != EulerClass::None)
}

fn factorial(k: u64) -> BigUint {
    (2..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Spanning arborescences of the multigraph directed towards `root`.
/// Loops do not contribute.
fn arborescences(n: usize, arcs: &[(VertexId, VertexId, u64)], root: VertexId) -> BigUint {
    let idx: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let pos = |v: VertexId| idx.iter().position(|&x| x == v);
    let mut lap = vec![vec![BigInt::zero(); idx.len()]; idx.len()];
    for &(u, v, m) in arcs {
        if u == v {
            continue;
        }
        if let Some(i) = pos(u) {
            lap[i][i] += m;
            if let Some(j) = pos(v) {
                lap[i][j] -= m;
            }
        }
    }
    let d = bareiss_det(lap);
    debug_assert!(!d.is_negative());
    d.magnitude().clone()
}

/// DW: exact count through the BEST theorem on ψ(G).
///
/// Eulerian case: `|E_ψ| · t(ψ) · ∏(d⁻(v) − 1)! / ∏π_e!`. Semi-Eulerian
/// case: close the path with an arc from its end to its start and use
/// `t(ψ⁺) · ∏(d⁻⁺(v) − 1)! / ∏π_e!`.
pub fn dw2_count(g: &SeqGraph) -> Result<BigCount> {
    require(g, true, true)?;
    if !w2_weighted_realizable(g)? {
        return Ok(BigCount::zero());
    }
    let n = g.n();
    if g.edge_count() == 0 {
        return Ok(BigCount::one());
    }
    let m = psi(g)?;
    let (out, inn) = m.degrees();
    let mut arcs: Vec<(VertexId, VertexId, u64)> = g.edges().collect();
    let mut indeg = inn.clone();
    let class = eulerian_class(&m);
    let mut scale = BigUint::one();
    if class == EulerClass::SemiEuler {
        let start = (0..n).find(|&v| out[v] > inn[v]).expect("semi-Eulerian start");
        let end = (0..n).find(|&v| inn[v] > out[v]).expect("semi-Eulerian end");
        arcs.push((end, start, 1));
        indeg[start] += 1;
    } else {
        scale = BigUint::from(m.edge_count());
    }
    let t = arborescences(n, &arcs, 0);
    let mut num = scale * t;
    for &d in &indeg {
        num *= factorial(d.saturating_sub(1));
    }
    let den = g.edges().fold(BigUint::one(), |acc, (_, _, pi)| acc * factorial(pi));
    debug_assert!((&num % &den).is_zero());
    Ok(BigCount::Finite(num / den))
}

/// GW: exact count by backtracking over vertex sequences with residual
/// multiplicities (equivalently, Eulerian paths of ψ(G) divided by ∏π_e!).
pub fn gw2_count(g: &SeqGraph, node_budget: u64) -> Result<BigCount> {
    require(g, false, true)?;
    if !w2_weighted_realizable(g)? {
        return Ok(BigCount::zero());
    }
    let n = g.n();
    if g.edge_count() == 0 {
        return Ok(BigCount::one());
    }
    let idx = g.edge_index();
    let mut residual: Vec<u64> = g.edges().map(|(_, _, pi)| pi).collect();
    let adj = g.out_adjacency();
    let m = psi(g)?;
    let (deg, _) = m.degrees();
    let odd: Vec<VertexId> = (0..n).filter(|&v| deg[v] % 2 == 1).collect();
    let starts: Vec<VertexId> = if odd.is_empty() { (0..n).collect() } else { odd };
    let total = m.edge_count();

    struct Search<'a> {
        adj: &'a [Vec<VertexId>],
        idx: &'a crate::graph::EdgeIndex,
        residual: &'a mut [u64],
        expansions: u64,
        budget: u64,
    }
    impl Search<'_> {
        fn go(&mut self, v: VertexId, left: u64) -> Result<BigUint> {
            self.expansions += 1;
            if self.expansions > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            if left == 0 {
                return Ok(BigUint::one());
            }
            let mut acc = BigUint::zero();
            for &u in &self.adj[v] {
                let e = self.idx.get(v, u).expect("adjacent");
                if self.residual[e] > 0 {
                    self.residual[e] -= 1;
                    let r = self.go(u, left - 1);
                    self.residual[e] += 1;
                    acc += r?;
                }
            }
            Ok(acc)
        }
    }
    let mut s = Search {
        adj: &adj,
        idx: &idx,
        residual: &mut residual,
        expansions: 0,
        budget: node_budget,
    };
    let mut acc = BigUint::zero();
    for v in starts {
        acc += s.go(v, total)?;
    }
    Ok(BigCount::Finite(acc))
}

/// Dispatches on the variant of `g`.
pub fn count_w2(g: &SeqGraph, node_budget: u64) -> Result<W2CountResult> {
    Ok(match (g.is_directed(), g.is_weighted()) {
        (false, false) => W2CountResult {
            count: gu2_count(g)?,
            method: CountMethod::Characterization,
        },
        (true, false) => W2CountResult {
            count: du2_count(g)?,
            method: CountMethod::Characterization,
        },
        (true, true) => W2CountResult {
            count: dw2_count(g)?,
            method: CountMethod::BestFormula,
        },
        (false, true) => W2CountResult {
            count: gw2_count(g, node_budget)?,
            method: CountMethod::Backtracking,
        },
    })
}
