//! Sequence graphs and token sequences.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Dense vertex index in `0..n`.
pub type VertexId = usize;

/// A graph-of-words: vertices are symbols, edges record co-occurrence
/// inside a sliding window.
///
/// Edges are stored under a canonical key: `(u, v)` for digraphs and
/// `(min, max)` for undirected graphs. Self-loops are allowed. Unweighted
/// graphs store weight 1 internally but report no weights through
/// [`SeqGraph::weight`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqGraph {
    n: usize,
    directed: bool,
    weighted: bool,
    edges: BTreeMap<(VertexId, VertexId), u64>,
    labels: Vec<String>,
}

impl SeqGraph {
    /// Empty graph on `n` vertices labelled by their ids.
    pub fn new(n: usize, directed: bool, weighted: bool) -> Self {
        SeqGraph {
            n,
            directed,
            weighted,
            edges: BTreeMap::new(),
            labels: (0..n).map(|v| v.to_string()).collect(),
        }
    }

    pub fn with_labels(labels: Vec<String>, directed: bool, weighted: bool) -> Result<Self> {
        let mut seen = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(SeqGraph {
            n: labels.len(),
            directed,
            weighted,
            edges: BTreeMap::new(),
            labels,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    /// Short variant tag: `GU`, `GW`, `DU` or `DW`.
    pub fn variant(&self) -> &'static str {
        match (self.directed, self.weighted) {
            (false, false) => "GU",
            (false, true) => "GW",
            (true, false) => "DU",
            (true, true) => "DW",
        }
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    /// Canonical storage key for the pair `(u, v)`.
    #[inline]
    pub fn key(&self, u: VertexId, v: VertexId) -> (VertexId, VertexId) {
        if self.directed || u <= v {
            (u, v)
        } else {
            (v, u)
        }
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Adds an edge to an unweighted graph.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        if self.weighted {
            return Err(Error::WrongVariant("unweighted"));
        }
        self.insert(u, v, 1)
    }

    /// Adds an edge of weight `pi` to a weighted graph.
    pub fn add_weighted_edge(&mut self, u: VertexId, v: VertexId, pi: u64) -> Result<()> {
        if !self.weighted {
            return Err(Error::WrongVariant("weighted"));
        }
        if pi == 0 {
            return Err(Error::ZeroWeight(u, v));
        }
        self.insert(u, v, pi)
    }

    /// Adds `pi` to the weight of `(u, v)`, creating the edge if needed.
    pub(crate) fn accumulate(&mut self, u: VertexId, v: VertexId, pi: u64) {
        if pi == 0 {
            return;
        }
        let k = self.key(u, v);
        *self.edges.entry(k).or_insert(0) += pi;
    }

    fn insert(&mut self, u: VertexId, v: VertexId, pi: u64) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let k = self.key(u, v);
        if self.edges.contains_key(&k) {
            return Err(Error::DuplicateEdge(k.0, k.1));
        }
        self.edges.insert(k, pi);
        Ok(())
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains_key(&self.key(u, v))
    }

    /// Weight of `(u, v)`; `None` for missing edges and for unweighted graphs.
    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<u64> {
        if !self.weighted {
            return None;
        }
        self.edges.get(&self.key(u, v)).copied()
    }

    /// Edges in canonical key order, with weight 1 for unweighted graphs.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, u64)> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Σπ over all edges (edge count when unweighted).
    pub fn total_weight(&self) -> u64 {
        self.edges.values().sum()
    }

    pub(crate) fn edge_map(&self) -> &BTreeMap<(VertexId, VertexId), u64> {
        &self.edges
    }

    /// Same vertex count, orientation, weighting and edge map. Labels are ignored.
    pub fn same_graph(&self, other: &SeqGraph) -> bool {
        self.n == other.n
            && self.directed == other.directed
            && self.weighted == other.weighted
            && self.edges == other.edges
    }

    /// Copy of the graph with weights dropped.
    pub fn unweighted(&self) -> SeqGraph {
        SeqGraph {
            n: self.n,
            directed: self.directed,
            weighted: false,
            edges: self.edges.keys().map(|&k| (k, 1)).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Vertices incident to at least one edge (loops included).
    pub fn incident(&self) -> Vec<bool> {
        let mut inc = vec![false; self.n];
        for &(u, v) in self.edges.keys() {
            inc[u] = true;
            inc[v] = true;
        }
        inc
    }

    /// Some vertex carries no edge at all.
    pub fn has_edge_free_vertex(&self) -> bool {
        self.incident().iter().any(|&b| !b)
    }

    /// Out-neighbours (all neighbours when undirected), sorted.
    pub fn out_adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in self.edges.keys() {
            adj[u].push(v);
            if !self.directed && u != v {
                adj[v].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    /// Dense `n × n` lookup from ordered pair to edge index in [`SeqGraph::edges`]
    /// order. Undirected graphs map both orientations to the same index.
    pub fn edge_index(&self) -> EdgeIndex {
        let mut slots = vec![None; self.n * self.n];
        for (i, &(u, v)) in self.edges.keys().enumerate() {
            slots[u * self.n + v] = Some(i);
            slots[v * self.n + u] = if self.directed { slots[v * self.n + u] } else { Some(i) };
        }
        EdgeIndex { n: self.n, slots }
    }

    /// Connected when orientation is ignored, considering every vertex.
    pub fn is_weakly_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut parts = self.n;
        for &(u, v) in self.edges.keys() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                parts -= 1;
            }
        }
        parts == 1
    }
}

/// Ordered-pair to edge-index table, see [`SeqGraph::edge_index`].
#[derive(Debug, Clone)]
pub struct EdgeIndex {
    n: usize,
    slots: Vec<Option<usize>>,
}

impl EdgeIndex {
    #[inline]
    pub fn get(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.slots[u * self.n + v]
    }
}

/// A finite token sequence `x_1 … x_p` over dense vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Sequence(Vec<VertexId>);

impl Sequence {
    pub fn new(tokens: Vec<VertexId>) -> Self {
        Sequence(tokens)
    }

    /// Interns whitespace-free words in first-appearance order.
    pub fn from_words<'a>(words: impl IntoIterator<Item = &'a str>) -> (Sequence, Vec<String>) {
        let mut vocab: Vec<String> = Vec::new();
        let mut index: HashMap<&'a str, VertexId> = HashMap::new();
        let mut tokens = Vec::new();
        for w in words {
            let id = *index.entry(w).or_insert_with(|| {
                vocab.push(w.to_string());
                vocab.len() - 1
            });
            tokens.push(id);
        }
        (Sequence(tokens), vocab)
    }

    /// Relabels ids in first-appearance order, returning the new sequence
    /// and the old id of each new vertex.
    pub fn compact(&self) -> (Sequence, Vec<VertexId>) {
        let mut map: HashMap<VertexId, VertexId> = HashMap::new();
        let mut old = Vec::new();
        let tokens = self
            .0
            .iter()
            .map(|&t| {
                *map.entry(t).or_insert_with(|| {
                    old.push(t);
                    old.len() - 1
                })
            })
            .collect();
        (Sequence(tokens), old)
    }

    pub fn tokens(&self) -> &[VertexId] {
        &self.0
    }

    pub fn into_tokens(self) -> Vec<VertexId> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Space-separated labels from `g`.
    pub fn display_with<'a>(&'a self, g: &'a SeqGraph) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Sequence, &'a SeqGraph);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (i, &t) in self.0 .0.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    f.write_str(self.1.label(t))?;
                }
                Ok(())
            }
        }
        D(self, g)
    }
}

impl From<Vec<VertexId>> for Sequence {
    fn from(v: Vec<VertexId>) -> Self {
        Sequence(v)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undirected_keys_are_symmetric() {
        let mut g = SeqGraph::new(3, false, false);
        g.add_edge(2, 0).unwrap();
        assert!(g.has_edge(0, 2));
        assert_eq!(g.add_edge(0, 2), Err(Error::DuplicateEdge(0, 2)));
        let idx = g.edge_index();
        assert_eq!(idx.get(0, 2), idx.get(2, 0));
    }

    #[test]
    fn directed_keys_keep_orientation() {
        let mut g = SeqGraph::new(2, true, true);
        g.add_weighted_edge(1, 0, 2).unwrap();
        assert!(!g.has_edge(0, 1));
        assert_eq!(g.weight(1, 0), Some(2));
        assert_eq!(g.add_weighted_edge(0, 1, 0), Err(Error::ZeroWeight(0, 1)));
        let idx = g.edge_index();
        assert_eq!(idx.get(0, 1), None);
        assert_eq!(idx.get(1, 0), Some(0));
    }

    #[test]
    fn labels_must_be_unique() {
        let err = SeqGraph::with_labels(vec!["a".into(), "a".into()], true, false).unwrap_err();
        assert_eq!(err, Error::DuplicateLabel("a".into()));
    }

    #[test]
    fn words_intern_in_first_appearance_order() {
        let (s, vocab) = Sequence::from_words("a b r a".split_whitespace());
        assert_eq!(s.tokens(), &[0, 1, 2, 0]);
        assert_eq!(vocab, ["a", "b", "r"]);
        let (c, old) = Sequence::new(vec![5, 2, 5]).compact();
        assert_eq!(c.tokens(), &[0, 1, 0]);
        assert_eq!(old, [5, 2]);
    }
}
