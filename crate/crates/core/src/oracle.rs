//! Brute-force ground truth for small instances: exhaustive realization
//! search and counting, Eulerian trail enumeration, and plain graph
//! predicates (Hamiltonian paths, cliques).
//!
//! Nothing here shares code with the solvers it is used to check, beyond
//! the graph type and the realization predicate.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::builder::realizes;
use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::graph::{SeqGraph, Sequence, VertexId};
use crate::multigraph::MultiGraph;

/// Default cap on search expansions.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    First,
    Count,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult {
    First(Option<Sequence>),
    Count(BigCount),
    All(Vec<Sequence>),
}

/// Outcome of a bounded existence search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FirstOutcome {
    /// A shortest realization (among those the search admits).
    Found(Sequence),
    /// The reachable state space was exhausted: no realization of any length.
    Exhausted,
    /// No realization up to the horizon, but longer ones are not ruled out.
    Inconclusive,
}

impl FirstOutcome {
    pub fn witness(&self) -> Option<&Sequence> {
        match self {
            FirstOutcome::Found(x) => Some(x),
            _ => None,
        }
    }
}

/// Filter on the next symbol given the current window suffix.
pub type Allow<'a> = &'a dyn Fn(&[VertexId], VertexId) -> bool;

/// Restrictions for [`first`]: a forced prefix and a filter on the next
/// symbol.
#[derive(Default)]
pub struct Constraints<'a> {
    pub prefix: Vec<VertexId>,
    pub allow: Option<Allow<'a>>,
}

/// Exhaustive search over sequences of length at most `max_len`.
///
/// Unweighted graphs: FIRST and COUNT run over search states (window
/// suffix, realized edges, used vertices); ALL enumerates sequences.
/// Weighted graphs: depth-first enumeration with residual weights.
pub fn search(g: &SeqGraph, w: usize, max_len: usize, mode: Mode) -> Result<SearchResult> {
    search_budget(g, w, max_len, mode, DEFAULT_BUDGET)
}

pub fn search_budget(g: &SeqGraph, w: usize, max_len: usize, mode: Mode, budget: u64) -> Result<SearchResult> {
    if w < 2 {
        return Err(Error::InvalidWindow(w));
    }
    if g.is_weighted() {
        let mut dfs = WeightedDfs::new(g, w, max_len, budget, mode);
        dfs.run()?;
        return Ok(match mode {
            Mode::First => SearchResult::First(dfs.found.into_iter().next()),
            Mode::Count => SearchResult::Count(BigCount::Finite(dfs.count)),
            Mode::All => SearchResult::All(dfs.found),
        });
    }
    Ok(match mode {
        Mode::First => SearchResult::First(
            first(g, w, max_len, &Constraints::default(), budget)?
                .witness()
                .cloned(),
        ),
        Mode::Count => {
            let by_len = count_by_length(g, w, max_len, budget)?;
            SearchResult::Count(BigCount::Finite(by_len.into_iter().sum()))
        }
        Mode::All => SearchResult::All(all_unweighted(g, w, max_len, budget)?),
    })
}

/// Convenience: number of realizations of length at most `max_len`.
pub fn count(g: &SeqGraph, w: usize, max_len: usize) -> Result<BigCount> {
    match search(g, w, max_len, Mode::Count)? {
        SearchResult::Count(c) => Ok(c),
        _ => unreachable!(),
    }
}

/// Convenience: some realization of length at most `max_len`.
pub fn find(g: &SeqGraph, w: usize, max_len: usize) -> Result<Option<Sequence>> {
    match search(g, w, max_len, Mode::First)? {
        SearchResult::First(x) => Ok(x),
        _ => unreachable!(),
    }
}

/// Bitset-backed search state for unweighted graphs.
struct StateSpace {
    n: usize,
    w: usize,
    m: usize,
    /// `pair[u * n + v]`: edge index realized by `u` followed by `v`.
    pair: Vec<Option<usize>>,
    cov_words: usize,
    used_words: usize,
}

impl StateSpace {
    fn new(g: &SeqGraph, w: usize) -> Self {
        let n = g.n();
        let mut pair = vec![None; n * n];
        for (i, (u, v, _)) in g.edges().enumerate() {
            pair[u * n + v] = Some(i);
            if !g.is_directed() {
                pair[v * n + u] = Some(i);
            }
        }
        let m = g.edge_count();
        StateSpace {
            n,
            w,
            m,
            pair,
            cov_words: m.div_ceil(64).max(1),
            used_words: n.div_ceil(64).max(1),
        }
    }

    /// Key layout: [suffix length, suffix..., covered..., used...].
    fn initial(&self) -> Vec<u64> {
        let mut k = vec![0u64; 1 + (self.w - 1) + self.cov_words + self.used_words];
        k[0] = 0;
        k
    }

    fn suffix<'a>(&self, k: &'a [u64]) -> &'a [u64] {
        &k[1..1 + k[0] as usize]
    }

    fn append(&self, k: &[u64], v: VertexId) -> Option<Vec<u64>> {
        let mut out = k.to_vec();
        let len = k[0] as usize;
        let cov0 = 1 + (self.w - 1);
        for &t in &k[1..1 + len] {
            let e = self.pair[t as usize * self.n + v]?;
            out[cov0 + e / 64] |= 1 << (e % 64);
        }
        let used0 = cov0 + self.cov_words;
        out[used0 + v / 64] |= 1 << (v % 64);
        if len == self.w - 1 {
            out.copy_within(2..1 + len, 1);
            out[len] = v as u64;
        } else {
            out[1 + len] = v as u64;
            out[0] = len as u64 + 1;
        }
        Some(out)
    }

    fn accepting(&self, k: &[u64]) -> bool {
        if k[0] == 0 {
            return false;
        }
        let cov0 = 1 + (self.w - 1);
        let used0 = cov0 + self.cov_words;
        let full = |words: &[u64], bits: usize| (0..bits).all(|b| words[b / 64] >> (b % 64) & 1 == 1);
        full(&k[cov0..used0], self.m) && full(&k[used0..], self.n)
    }
}

/// Breadth-first search over states; returns a shortest realization.
pub fn first(g: &SeqGraph, w: usize, max_len: usize, c: &Constraints<'_>, budget: u64) -> Result<FirstOutcome> {
    if g.is_weighted() {
        return Err(Error::WrongVariant("unweighted"));
    }
    if w < 2 {
        return Err(Error::InvalidWindow(w));
    }
    if g.n() == 0 {
        return Ok(FirstOutcome::Exhausted);
    }
    let sp = StateSpace::new(g, w);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    // (parent state, appended symbol)
    let mut states: Vec<(usize, VertexId)> = Vec::new();
    let mut key = sp.initial();
    for &v in &c.prefix {
        key = match sp.append(&key, v) {
            Some(k) => k,
            None => return Ok(FirstOutcome::Exhausted),
        };
    }
    if c.prefix.len() > max_len {
        return Ok(FirstOutcome::Inconclusive);
    }
    let rebuild = |states: &Vec<(usize, VertexId)>, mut i: usize| {
        let mut tail = Vec::new();
        while i != usize::MAX {
            tail.push(states[i].1);
            i = states[i].0;
        }
        tail.reverse();
        let mut x = c.prefix.clone();
        x.extend(tail);
        Sequence::new(x)
    };
    if sp.accepting(&key) {
        return Ok(FirstOutcome::Found(Sequence::new(c.prefix.clone())));
    }
    seen.insert(key.clone());
    let mut frontier: Vec<(Vec<u64>, usize)> = vec![(key, usize::MAX)];
    let mut expansions = 0u64;
    let mut len = c.prefix.len();
    while !frontier.is_empty() {
        if len == max_len {
            return Ok(FirstOutcome::Inconclusive);
        }
        let mut next = Vec::new();
        for (k, idx) in frontier {
            let suf: Vec<VertexId> = sp.suffix(&k).iter().map(|&t| t as usize).collect();
            for v in 0..sp.n {
                if let Some(f) = c.allow {
                    if !f(&suf, v) {
                        continue;
                    }
                }
                expansions += 1;
                if expansions > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                let Some(nk) = sp.append(&k, v) else { continue };
                if !seen.insert(nk.clone()) {
                    continue;
                }
                let id = states.len();
                states.push((idx, v));
                if sp.accepting(&nk) {
                    return Ok(FirstOutcome::Found(rebuild(&states, id)));
                }
                next.push((nk, id));
            }
        }
        frontier = next;
        len += 1;
    }
    Ok(FirstOutcome::Exhausted)
}

/// `out[l]` = number of unweighted realizations of length exactly `l`.
pub fn count_by_length(g: &SeqGraph, w: usize, max_len: usize, budget: u64) -> Result<Vec<BigUint>> {
    if g.is_weighted() {
        return Err(Error::WrongVariant("unweighted"));
    }
    let sp = StateSpace::new(g, w);
    let mut out = vec![BigUint::zero(); max_len + 1];
    let mut layer: HashMap<Vec<u64>, BigUint> = HashMap::from([(sp.initial(), BigUint::one())]);
    let mut expansions = 0u64;
    for len in 1..=max_len {
        let mut next: HashMap<Vec<u64>, BigUint> = HashMap::new();
        for (k, c) in &layer {
            for v in 0..sp.n {
                expansions += 1;
                if expansions > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                if let Some(nk) = sp.append(k, v) {
                    *next.entry(nk).or_insert_with(BigUint::zero) += c;
                }
            }
        }
        out[len] = next
            .iter()
            .filter(|(k, _)| sp.accepting(k))
            .map(|(_, c)| c.clone())
            .sum();
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    Ok(out)
}

fn all_unweighted(g: &SeqGraph, w: usize, max_len: usize, budget: u64) -> Result<Vec<Sequence>> {
    let sp = StateSpace::new(g, w);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut expansions = 0u64;
    fn go(
        sp: &StateSpace,
        key: &[u64],
        cur: &mut Vec<VertexId>,
        max_len: usize,
        out: &mut Vec<Sequence>,
        expansions: &mut u64,
        budget: u64,
    ) -> Result<()> {
        if sp.accepting(key) {
            out.push(Sequence::new(cur.clone()));
        }
        if cur.len() == max_len {
            return Ok(());
        }
        for v in 0..sp.n {
            *expansions += 1;
            if *expansions > budget {
                return Err(Error::BudgetExceeded(budget));
            }
            if let Some(nk) = sp.append(key, v) {
                cur.push(v);
                go(sp, &nk, cur, max_len, out, expansions, budget)?;
                cur.pop();
            }
        }
        Ok(())
    }
    go(&sp, &sp.initial(), &mut cur, max_len, &mut out, &mut expansions, budget)?;
    out.sort();
    Ok(out)
}

struct WeightedDfs<'a> {
    g: &'a SeqGraph,
    n: usize,
    w: usize,
    max_len: usize,
    budget: u64,
    mode: Mode,
    pair: Vec<Option<usize>>,
    residual: Vec<u64>,
    left: u64,
    cur: Vec<VertexId>,
    expansions: u64,
    count: BigUint,
    found: Vec<Sequence>,
}

impl<'a> WeightedDfs<'a> {
    fn new(g: &'a SeqGraph, w: usize, max_len: usize, budget: u64, mode: Mode) -> Self {
        let n = g.n();
        let mut pair = vec![None; n * n];
        for (i, (u, v, _)) in g.edges().enumerate() {
            pair[u * n + v] = Some(i);
            if !g.is_directed() {
                pair[v * n + u] = Some(i);
            }
        }
        WeightedDfs {
            g,
            n,
            w,
            max_len,
            budget,
            mode,
            pair,
            residual: g.edges().map(|(_, _, pi)| pi).collect(),
            left: g.total_weight(),
            cur: Vec::new(),
            expansions: 0,
            count: BigUint::zero(),
            found: Vec::new(),
        }
    }

    fn run(&mut self) -> Result<()> {
        self.go()
    }

    fn done(&self) -> bool {
        self.mode == Mode::First && !self.found.is_empty()
    }

    fn go(&mut self) -> Result<()> {
        if !self.cur.is_empty() && self.left == 0 {
            let x = Sequence::new(self.cur.clone());
            // all weights spent; every further symbol would add a pair
            if realizes(&x, self.g, self.w) {
                self.count += 1u32;
                if self.mode != Mode::Count {
                    self.found.push(x);
                }
            }
            return Ok(());
        }
        if self.cur.len() == self.max_len {
            return Ok(());
        }
        let lo = self.cur.len().saturating_sub(self.w - 1);
        for v in 0..self.n {
            if self.done() {
                return Ok(());
            }
            self.expansions += 1;
            if self.expansions > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            let mut taken = Vec::new();
            let mut ok = true;
            for i in lo..self.cur.len() {
                match self.pair[self.cur[i] * self.n + v] {
                    Some(e) if self.residual[e] > 0 => {
                        self.residual[e] -= 1;
                        taken.push(e);
                    }
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                self.left -= taken.len() as u64;
                self.cur.push(v);
                let r = self.go();
                self.cur.pop();
                self.left += taken.len() as u64;
                for &e in &taken {
                    self.residual[e] += 1;
                }
                r?;
            } else {
                for &e in &taken {
                    self.residual[e] += 1;
                }
            }
        }
        Ok(())
    }
}

/// Edge-labelled (semi-)Eulerian trails of `m`: parallel copies are
/// distinguished and every vertex must be visited. An undirected loop
/// is traversed in one way only.
pub fn eulerian_paths(m: &MultiGraph, budget: u64) -> Result<BigCount> {
    let n = m.n;
    let total: u64 = m.edge_count();
    if total == 0 {
        return Ok(BigCount::from(u64::from(n == 1)));
    }
    let mut bearing = vec![false; n];
    for &(u, v) in m.multiplicity.keys() {
        bearing[u] = true;
        bearing[v] = true;
    }
    if bearing.iter().any(|&b| !b) {
        return Ok(BigCount::zero());
    }
    let mut adj: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
    let mut left: Vec<u64> = Vec::new();
    for (i, (&(u, v), &k)) in m.multiplicity.iter().enumerate() {
        left.push(k);
        adj[u].push((v, i));
        if !m.directed && u != v {
            adj[v].push((u, i));
        }
    }
    fn go(
        v: VertexId,
        rem: u64,
        adj: &[Vec<(VertexId, usize)>],
        left: &mut [u64],
        exp: &mut u64,
        budget: u64,
    ) -> Result<BigUint> {
        *exp += 1;
        if *exp > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        if rem == 0 {
            return Ok(BigUint::one());
        }
        let mut acc = BigUint::zero();
        for &(u, e) in &adj[v] {
            let k = left[e];
            if k > 0 {
                left[e] -= 1;
                let r = go(u, rem - 1, adj, left, exp, budget);
                left[e] += 1;
                acc += r? * k;
            }
        }
        Ok(acc)
    }
    let mut exp = 0u64;
    let mut acc = BigUint::zero();
    for v in 0..n {
        acc += go(v, total, &adj, &mut left, &mut exp, budget)?;
    }
    Ok(BigCount::Finite(acc))
}

/// Some Hamiltonian path exists (any endpoints; loops ignored).
pub fn has_hamiltonian_path(g: &SeqGraph) -> bool {
    hamiltonian_path_between(g, None, None)
}

/// Hamiltonian path from `from` (if given) to `to` (if given), by
/// subset dynamic programming.
pub fn hamiltonian_path_between(g: &SeqGraph, from: Option<VertexId>, to: Option<VertexId>) -> bool {
    let n = g.n();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return from.unwrap_or(0) == 0 && to.unwrap_or(0) == 0;
    }
    assert!(n <= 20, "hamiltonian oracle is exponential");
    let full = (1usize << n) - 1;
    // reach[mask] = bitset of end vertices of paths covering exactly mask
    let mut reach = vec![0u32; 1 << n];
    for v in 0..n {
        if from.is_none_or(|f| f == v) {
            reach[1 << v] |= 1 << v;
        }
    }
    for mask in 1..=full {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        for v in 0..n {
            if ends >> v & 1 == 0 {
                continue;
            }
            for u in 0..n {
                if mask >> u & 1 == 0 && u != v && g.has_edge(v, u) {
                    reach[mask | 1 << u] |= 1 << u;
                }
            }
        }
    }
    match to {
        Some(t) => reach[full] >> t & 1 == 1,
        None => reach[full] != 0,
    }
}

/// Some Hamiltonian cycle exists (n ≥ 3, simple).
pub fn has_hamiltonian_cycle(g: &SeqGraph) -> bool {
    let n = g.n();
    if n < 3 && !g.is_directed() {
        return false;
    }
    if n < 2 {
        return n == 1 && g.has_edge(0, 0);
    }
    (0..n).any(|v| g.has_edge(v, 0) && hamiltonian_path_between(g, Some(0), Some(v)))
}

/// A clique of size `k` on distinct vertices (loops ignored).
pub fn has_clique(g: &SeqGraph, k: usize) -> bool {
    fn go(g: &SeqGraph, k: usize, start: usize, cur: &mut Vec<usize>) -> bool {
        if cur.len() == k {
            return true;
        }
        for v in start..g.n() {
            if cur.iter().all(|&u| g.has_edge(u, v)) {
                cur.push(v);
                if go(g, k, v + 1, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    go(g, k, 0, &mut Vec::new())
}

/// Every sequence over `n` symbols of length `1..=max_len`, in
/// shortlex order. For cross-checks on tiny inputs only.
pub fn all_sequences(n: usize, max_len: usize) -> impl Iterator<Item = Sequence> {
    (1..=max_len).flat_map(move |len| {
        let total = n.checked_pow(len as u32).unwrap_or(0);
        (0..total).map(move |mut code| {
            let mut t = vec![0; len];
            for slot in t.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            Sequence::new(t)
        })
    })
}
