//! Exact counting and enumeration of weighted realizations for any window
//! size, by memoized recursion over residual weights and the current suffix.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::builder::total_pairs;
use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::graph::{EdgeIndex, SeqGraph, Sequence, VertexId};

/// Default cap on memo entries.
pub const DEFAULT_MEMO_CAP: usize = 20_000_000;

/// Realization length forced by Σπ at window `w`, if any.
pub fn length_for_total(total: u64, w: usize) -> Option<usize> {
    let w = w as u64;
    if w < 2 {
        return None;
    }
    if total >= w * (w - 1) / 2 {
        let num = w * (w - 1) + 2 * total;
        let den = 2 * (w - 1);
        num.is_multiple_of(den).then(|| (num / den) as usize)
    } else {
        // p(p − 1)/2 = Σπ with p < w
        (1..w).find(|p| p * (p - 1) / 2 == total).map(|p| p as usize)
    }
}

pub fn derive_length(g: &SeqGraph, w: usize) -> Option<usize> {
    length_for_total(g.total_weight(), w)
}

struct Dp {
    n: usize,
    w: usize,
    directed: bool,
    idx: EdgeIndex,
    residual: Vec<u32>,
    /// Endpoints of each edge, in canonical orientation.
    ends: Vec<(VertexId, VertexId)>,
    /// Residual weight leaving / entering each vertex; for undirected
    /// graphs their sum is the residual degree (loops counted twice).
    rout: Vec<u64>,
    rin: Vec<u64>,
    /// `adj[u]`: (edge, v) for each edge leaving `u`; both ways if undirected.
    adj: Vec<Vec<(usize, VertexId)>>,
    /// `radj[v]`: (edge, u) for each arc entering `v`; empty if undirected.
    radj: Vec<Vec<(usize, VertexId)>>,
    suffix: Vec<VertexId>,
    memo: HashMap<Box<[u8]>, BigUint>,
    cap: usize,
}

impl Dp {
    /// Memo key as varints, since residuals are mostly tiny. `remaining`
    /// fixes the suffix length, so the encoding stays injective.
    fn key(&self, remaining: usize) -> Box<[u8]> {
        let mut k = Vec::with_capacity(self.residual.len() + self.suffix.len() + 2);
        let mut put = |mut x: u64| {
            while x >= 0x80 {
                k.push((x as u8) | 0x80);
                x >>= 7;
            }
            k.push(x as u8);
        };
        for &r in &self.residual {
            put(r as u64);
        }
        for &v in &self.suffix {
            put(v as u64);
        }
        put(remaining as u64);
        k.into_boxed_slice()
    }

    /// Edges consumed by appending `v`, or `None` if some pair is missing
    /// or exhausted. On success the residuals are already decremented.
    fn take(&mut self, v: VertexId) -> Option<Vec<usize>> {
        let mut taken = Vec::with_capacity(self.suffix.len());
        for i in 0..self.suffix.len() {
            let t = self.suffix[i];
            match self.idx.get(t, v) {
                Some(e) if self.residual[e] > 0 => {
                    self.adjust(e, false);
                    taken.push(e);
                }
                _ => {
                    for &e in &taken {
                        self.adjust(e, true);
                    }
                    return None;
                }
            }
        }
        Some(taken)
    }

    fn push(&mut self, v: VertexId) -> Option<(Vec<usize>, Option<VertexId>)> {
        let taken = self.take(v)?;
        let dropped = if self.suffix.len() == self.w - 1 {
            Some(self.suffix.remove(0))
        } else {
            None
        };
        self.suffix.push(v);
        Some((taken, dropped))
    }

    fn pop(&mut self, taken: Vec<usize>, dropped: Option<VertexId>) {
        self.suffix.pop();
        if let Some(d) = dropped {
            self.suffix.insert(0, d);
        }
        for e in taken {
            self.adjust(e, true);
        }
    }

    fn adjust(&mut self, e: usize, up: bool) {
        let (a, b) = self.ends[e];
        if up {
            self.residual[e] += 1;
            self.rout[a] += 1;
            self.rin[b] += 1;
        } else {
            self.residual[e] -= 1;
            self.rout[a] -= 1;
            self.rin[b] -= 1;
        }
    }

    /// Consecutive future symbols are joined by edges with positive
    /// residual, so every such edge must be reachable from the last symbol
    /// (following orientation in digraphs).
    fn reachable(&self) -> bool {
        let Some(&last) = self.suffix.last() else { return true };
        let mut seen = vec![false; self.n];
        seen[last] = true;
        let mut stack = vec![last];
        while let Some(u) = stack.pop() {
            for &(e, v) in &self.adj[u] {
                if self.residual[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        self.ends
            .iter()
            .zip(&self.residual)
            .all(|(&(a, b), &r)| r == 0 || (seen[b] && (self.directed || seen[a])))
    }

    /// Necessary condition on residual weights once the window is full.
    ///
    /// Every future occurrence of `v` pairs with exactly `w − 1` earlier
    /// positions and with `w − 1` later ones, minus a deficit near the end
    /// of the sequence; the deficits of the last `w − 1` positions sum to
    /// `d` below. Suffix occurrences still owe a known number of forward
    /// pairs. Directed graphs thus fix each vertex's number of future
    /// occurrences; undirected graphs bound it.
    fn feasible(&self, remaining: usize) -> bool {
        let w1 = self.w - 1;
        if self.suffix.len() < w1 {
            return true;
        }
        let d: u64 = (0..remaining.min(w1)).map(|j| (w1 - j) as u64).sum();
        let mut owed = vec![0u64; self.n];
        let s = self.suffix.len();
        for (i, &v) in self.suffix.iter().enumerate() {
            owed[v] += (w1 - (s - 1 - i)).min(remaining) as u64;
        }
        let w1 = w1 as u64;
        let r = remaining as u64;
        if self.directed {
            let mut total = 0u64;
            let mut short = 0usize;
            for v in 0..self.n {
                if !self.rin[v].is_multiple_of(w1) || self.rout[v] < owed[v] {
                    return false;
                }
                let c = self.rin[v] / w1;
                let f = self.rout[v] - owed[v];
                if f > c * w1 || c * w1 - f > d {
                    return false;
                }
                short += usize::from(c * w1 > f);
                total += c;
            }
            total == r && short <= remaining.min(self.w - 1)
        } else {
            let (mut lo, mut hi) = (0u64, 0u64);
            for v in 0..self.n {
                let deg = self.rin[v] + self.rout[v];
                if deg < owed[v] {
                    return false;
                }
                let x = deg - owed[v];
                lo += x.div_ceil(2 * w1);
                hi += (x + d) / (2 * w1);
            }
            lo <= r && r <= hi
        }
    }

    /// Vertices with exactly one future occurrence, absent from the suffix.
    /// Every position within `w − 1` of that occurrence pairs with it, so
    /// the vertex's residual neighbourhood is exactly the multiset of those
    /// positions, and the pairs among them must fit in the residual too.
    fn singles_fit(&self, remaining: usize) -> bool {
        let w1 = self.w - 1;
        if self.suffix.len() < w1 {
            return true;
        }
        let d: u64 = (0..remaining.min(w1)).map(|j| (w1 - j) as u64).sum();
        let w1 = w1 as u64;
        (0..self.n).all(|v| {
            let single = if self.directed {
                self.rin[v] == w1
            } else {
                let x = self.rin[v] + self.rout[v];
                x > 0 && x <= 2 * w1 && x + d < 4 * w1
            };
            !single || self.suffix.contains(&v) || self.fits(v, remaining)
        })
    }

    fn fits(&self, v: VertexId, r: usize) -> bool {
        let gather = |list: &[(usize, VertexId)]| {
            let mut m: Vec<(VertexId, u32)> = Vec::new();
            for &(e, u) in list {
                if self.residual[e] > 0 {
                    m.push((u, self.residual[e]));
                }
            }
            m
        };
        let (before, after) = if self.directed {
            (gather(&self.radj[v]), gather(&self.adj[v]))
        } else {
            (gather(&self.adj[v]), Vec::new())
        };
        // a loop needs a second occurrence
        if before.iter().chain(&after).any(|&(u, _)| u == v) {
            return false;
        }
        let w1 = self.w - 1;
        // interior offsets all look alike, so one of them suffices
        (1..=r)
            .filter(|&t| t <= self.w || t + w1 >= r)
            .any(|t| self.fits_at(v, t, r, before.clone(), after.clone()))
    }

    /// Tries placing the single occurrence of `v` at future offset `t`.
    fn fits_at(
        &self,
        v: VertexId,
        t: usize,
        r: usize,
        mut before: Vec<(VertexId, u32)>,
        after: Vec<(VertexId, u32)>,
    ) -> bool {
        let w1 = self.w - 1;
        let lo = t as isize - w1 as isize;
        let hi = r.min(t + w1);
        let mut syms: Vec<Option<VertexId>> = vec![None; (hi as isize - lo + 1) as usize];
        let last = self.suffix.len() as isize - 1;
        for p in lo..=0 {
            let u = self.suffix[(last + p) as usize];
            match before.iter_mut().find(|(x, c)| *x == u && *c > 0) {
                Some(slot) => slot.1 -= 1,
                None => return false,
            }
            syms[(p - lo) as usize] = Some(u);
        }
        let size = |m: &[(VertexId, u32)]| m.iter().map(|&(_, c)| c as usize).sum::<usize>();
        let (free_before, free_after) = ((t - 1).min(w1), hi - t);
        if self.directed {
            if size(&before) != free_before || size(&after) != free_after {
                return false;
            }
        } else if size(&before) != free_before + free_after {
            return false;
        }
        let mut used = Vec::new();
        let mut pools = [before, after];
        self.place(lo.max(1) as usize, t, lo, hi, v, &mut syms, &mut pools, &mut used)
    }

    #[allow(clippy::too_many_arguments)]
    fn place(
        &self,
        p: usize,
        t: usize,
        lo: isize,
        hi: usize,
        v: VertexId,
        syms: &mut [Option<VertexId>],
        pools: &mut [Vec<(VertexId, u32)>; 2],
        used: &mut Vec<(usize, u32)>,
    ) -> bool {
        if p > hi {
            return true;
        }
        if p == t {
            syms[(p as isize - lo) as usize] = Some(v);
            let ok = self.place(p + 1, t, lo, hi, v, syms, pools, used);
            syms[(p as isize - lo) as usize] = None;
            return ok;
        }
        let pool = usize::from(self.directed && p > t);
        for i in 0..pools[pool].len() {
            let (x, c) = pools[pool][i];
            if c == 0 {
                continue;
            }
            // pairs with earlier positions in the window, other than v's
            let mut taken = Vec::new();
            let mut ok = true;
            let from = (p as isize - (self.w as isize - 1)).max(lo);
            for q in from..p as isize {
                if q == t as isize {
                    continue;
                }
                let y = syms[(q - lo) as usize].expect("earlier slots are filled");
                let Some(e) = self.idx.get(y, x) else {
                    ok = false;
                    break;
                };
                let k = match used.iter().position(|&(f, _)| f == e) {
                    Some(k) => k,
                    None => {
                        used.push((e, 0));
                        used.len() - 1
                    }
                };
                if used[k].1 >= self.residual[e] {
                    ok = false;
                    break;
                }
                used[k].1 += 1;
                taken.push(k);
            }
            if ok {
                pools[pool][i].1 -= 1;
                syms[(p as isize - lo) as usize] = Some(x);
                let found = self.place(p + 1, t, lo, hi, v, syms, pools, used);
                syms[(p as isize - lo) as usize] = None;
                pools[pool][i].1 += 1;
                if found {
                    for k in taken {
                        used[k].1 -= 1;
                    }
                    return true;
                }
            }
            for k in taken {
                used[k].1 -= 1;
            }
        }
        false
    }

    fn count(&mut self, remaining: usize) -> Result<BigUint> {
        if remaining == 0 {
            return Ok(if self.residual.iter().all(|&r| r == 0) {
                BigUint::one()
            } else {
                BigUint::zero()
            });
        }
        if !self.feasible(remaining) || !self.reachable() || !self.singles_fit(remaining) {
            return Ok(BigUint::zero());
        }
        let key = self.key(remaining);
        if let Some(c) = self.memo.get(&key) {
            return Ok(c.clone());
        }
        let mut acc = BigUint::zero();
        for v in 0..self.n {
            if let Some((taken, dropped)) = self.push(v) {
                let r = self.count(remaining - 1);
                self.pop(taken, dropped);
                acc += r?;
            }
        }
        if self.memo.len() >= self.cap {
            return Err(Error::BudgetExceeded(self.cap as u64));
        }
        self.memo.insert(key, acc.clone());
        Ok(acc)
    }

    fn enumerate(
        &mut self,
        remaining: usize,
        cur: &mut Vec<VertexId>,
        out: &mut Vec<Sequence>,
        limit: usize,
    ) -> Result<()> {
        if out.len() >= limit {
            return Ok(());
        }
        if remaining == 0 {
            if self.residual.iter().all(|&r| r == 0) {
                out.push(Sequence::new(cur.clone()));
            }
            return Ok(());
        }
        for v in 0..self.n {
            if let Some((taken, dropped)) = self.push(v) {
                let live = self.count(remaining - 1).map(|c| !c.is_zero());
                let r = match live {
                    Ok(true) => {
                        cur.push(v);
                        let r = self.enumerate(remaining - 1, cur, out, limit);
                        cur.pop();
                        r
                    }
                    Ok(false) => Ok(()),
                    Err(e) => Err(e),
                };
                self.pop(taken, dropped);
                r?;
                if out.len() >= limit {
                    break;
                }
            }
        }
        Ok(())
    }
}

/// Resolves the target length; `Ok(None)` means the count is trivially 0.
fn setup(g: &SeqGraph, w: usize, p: Option<usize>, cap: usize) -> Result<Option<(Dp, usize)>> {
    if !g.is_weighted() {
        return Err(Error::WrongVariant("weighted"));
    }
    if w < 2 {
        return Err(Error::InvalidWindow(w));
    }
    let p = match p.or_else(|| derive_length(g, w)) {
        Some(p) => p,
        None => return Ok(None),
    };
    if p == 0 || total_pairs(p, w) != g.total_weight() || (g.n() >= 2 && g.has_edge_free_vertex()) {
        return Ok(None);
    }
    if g.edges().any(|(_, _, pi)| pi > u32::MAX as u64) {
        return Err(Error::Precondition("edge weight exceeds 2^32 - 1".into()));
    }
    let mut rout = vec![0u64; g.n()];
    let mut rin = vec![0u64; g.n()];
    for (u, v, pi) in g.edges() {
        rout[u] += pi;
        rin[v] += pi;
    }
    let mut adj = vec![Vec::new(); g.n()];
    let mut radj = vec![Vec::new(); g.n()];
    for (e, (u, v, _)) in g.edges().enumerate() {
        adj[u].push((e, v));
        if g.is_directed() {
            radj[v].push((e, u));
        } else if u != v {
            adj[v].push((e, u));
        }
    }
    let dp = Dp {
        n: g.n(),
        w,
        directed: g.is_directed(),
        idx: g.edge_index(),
        residual: g.edges().map(|(_, _, pi)| pi as u32).collect(),
        ends: g.edges().map(|(u, v, _)| (u, v)).collect(),
        rout,
        rin,
        adj,
        radj,
        suffix: Vec::with_capacity(w),
        memo: HashMap::new(),
        cap,
    };
    Ok(Some((dp, p)))
}

/// Number of `w`-realizations of length `p` (default: the forced length)
/// whose weights equal Π exactly.
pub fn count(g: &SeqGraph, w: usize, p: Option<usize>) -> Result<BigCount> {
    count_capped(g, w, p, DEFAULT_MEMO_CAP)
}

pub fn count_capped(g: &SeqGraph, w: usize, p: Option<usize>, memo_cap: usize) -> Result<BigCount> {
    match setup(g, w, p, memo_cap)? {
        None => Ok(BigCount::zero()),
        Some((mut dp, p)) => Ok(BigCount::Finite(dp.count(p)?)),
    }
}

/// Up to `limit` realizations in lexicographic order of vertex ids.
pub fn enumerate(g: &SeqGraph, w: usize, p: Option<usize>, limit: usize) -> Result<Vec<Sequence>> {
    let mut out = Vec::new();
    if let Some((mut dp, p)) = setup(g, w, p, DEFAULT_MEMO_CAP)? {
        dp.enumerate(p, &mut Vec::with_capacity(p), &mut out, limit)?;
    }
    Ok(out)
}
