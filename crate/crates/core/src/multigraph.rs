//! ψ(G): the multigraph with each edge repeated by its weight.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{SeqGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    pub n: usize,
    pub directed: bool,
    /// Canonical edge key to multiplicity (always ≥ 1).
    pub multiplicity: BTreeMap<(VertexId, VertexId), u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerClass {
    Cycle,
    SemiEuler,
    None,
}

pub fn psi(g: &SeqGraph) -> Result<MultiGraph> {
    if !g.is_weighted() {
        return Err(Error::WrongVariant("weighted"));
    }
    Ok(MultiGraph {
        n: g.n(),
        directed: g.is_directed(),
        multiplicity: g.edge_map().clone(),
    })
}

impl MultiGraph {
    pub fn edge_count(&self) -> u64 {
        self.multiplicity.values().sum()
    }

    /// `(out, in)` degrees for digraphs; for undirected graphs both entries
    /// hold the degree, loops counting twice.
    pub fn degrees(&self) -> (Vec<u64>, Vec<u64>) {
        let mut out = vec![0u64; self.n];
        let mut inn = vec![0u64; self.n];
        for (&(u, v), &m) in &self.multiplicity {
            if self.directed {
                out[u] += m;
                inn[v] += m;
            } else {
                out[u] += m;
                out[v] += m;
            }
        }
        if !self.directed {
            inn.clone_from(&out);
        }
        (out, inn)
    }

    /// Connected over the vertices that carry at least one edge.
    pub fn edge_bearing_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut bearing = vec![false; self.n];
        for &(u, v) in self.multiplicity.keys() {
            bearing[u] = true;
            bearing[v] = true;
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
            }
        }
        let mut root = None;
        for v in (0..self.n).filter(|&v| bearing[v]) {
            let r = find(&mut parent, v);
            match root {
                None => root = Some(r),
                Some(r0) if r0 != r => return false,
                _ => {}
            }
        }
        true
    }

    /// Hierholzer's algorithm; returns the vertex walk of an Eulerian
    /// path or circuit starting at `start`, if one exists from there.
    pub fn euler_walk(&self, start: VertexId) -> Option<Vec<VertexId>> {
        let total = self.edge_count() as usize;
        let mut adj: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); self.n];
        let mut left: Vec<u64> = Vec::new();
        for (i, (&(u, v), &m)) in self.multiplicity.iter().enumerate() {
            left.push(m);
            adj[u].push((v, i));
            if !self.directed && u != v {
                adj[v].push((u, i));
            }
        }
        let mut ptr = vec![0usize; self.n];
        let mut stack = vec![start];
        let mut walk = Vec::with_capacity(total + 1);
        while let Some(&v) = stack.last() {
            let mut moved = false;
            while ptr[v] < adj[v].len() {
                let (u, i) = adj[v][ptr[v]];
                if left[i] > 0 {
                    left[i] -= 1;
                    stack.push(u);
                    moved = true;
                    break;
                }
                ptr[v] += 1;
            }
            if !moved {
                walk.push(v);
                stack.pop();
            }
        }
        walk.reverse();
        (walk.len() == total + 1).then_some(walk)
    }
}

/// Classifies ψ(G) as Eulerian, semi-Eulerian or neither. Edge-free
/// vertices are ignored for connectivity; a graph with no edges is a cycle.
pub fn eulerian_class(m: &MultiGraph) -> EulerClass {
    if m.multiplicity.is_empty() {
        return EulerClass::Cycle;
    }
    if !m.edge_bearing_connected() {
        return EulerClass::None;
    }
    let (out, inn) = m.degrees();
    if m.directed {
        let (mut plus, mut minus) = (0, 0);
        for v in 0..m.n {
            match out[v] as i128 - inn[v] as i128 {
                0 => {}
                1 => plus += 1,
                -1 => minus += 1,
                _ => return EulerClass::None,
            }
        }
        match (plus, minus) {
            (0, 0) => EulerClass::Cycle,
            (1, 1) => EulerClass::SemiEuler,
            _ => EulerClass::None,
        }
    } else {
        match out.iter().filter(|&&d| d % 2 == 1).count() {
            0 => EulerClass::Cycle,
            2 => EulerClass::SemiEuler,
            _ => EulerClass::None,
        }
    }
}
