//! The window map from sequences to sequence graphs, and its inverse check.

use crate::error::{Error, Result};
use crate::graph::{SeqGraph, Sequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub window: usize,
    pub directed: bool,
    pub weighted: bool,
}

impl BuildOptions {
    pub fn new(window: usize, directed: bool, weighted: bool) -> Self {
        BuildOptions {
            window,
            directed,
            weighted,
        }
    }

    /// Options matching the orientation and weighting of `g`.
    pub fn like(g: &SeqGraph, window: usize) -> Self {
        BuildOptions::new(window, g.is_directed(), g.is_weighted())
    }
}

/// Builds the graph of `x`: each position pair `i < j ≤ i + w − 1` adds or
/// increments edge `(x_i, x_j)`. Ids must be dense, i.e. every id below the
/// maximum occurs.
pub fn build(x: &Sequence, opts: BuildOptions) -> Result<SeqGraph> {
    let n = x.tokens().iter().max().map(|&m| m + 1).ok_or(Error::EmptySequence)?;
    let mut seen = vec![false; n];
    for &t in x.tokens() {
        seen[t] = true;
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Error::UnusedVertex(v));
    }
    build_on(x, n, opts)
}

/// Builds over `labels` as the vertex universe; every label must occur.
pub fn build_labeled(x: &Sequence, labels: Vec<String>, opts: BuildOptions) -> Result<SeqGraph> {
    let mut g = build(x, opts)?;
    if labels.len() != g.n() {
        return Err(Error::Precondition(format!(
            "{} labels for {} vertices",
            labels.len(),
            g.n()
        )));
    }
    let mut lg = SeqGraph::with_labels(labels, opts.directed, opts.weighted)?;
    for (u, v, pi) in g.edges() {
        lg.accumulate(u, v, pi);
    }
    std::mem::swap(&mut g, &mut lg);
    Ok(g)
}

/// Tokenizes whitespace-separated words and builds their labelled graph.
pub fn build_words(text: &str, opts: BuildOptions) -> Result<(SeqGraph, Sequence)> {
    let (x, vocab) = Sequence::from_words(text.split_whitespace());
    let g = build_labeled(&x, vocab, opts)?;
    Ok((g, x))
}

fn build_on(x: &Sequence, n: usize, opts: BuildOptions) -> Result<SeqGraph> {
    if opts.window < 2 {
        return Err(Error::InvalidWindow(opts.window));
    }
    let t = x.tokens();
    if t.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut g = SeqGraph::new(n, opts.directed, opts.weighted);
    for i in 0..t.len() {
        for j in i + 1..t.len().min(i + opts.window) {
            g.accumulate(t[i], t[j], 1);
        }
    }
    if !opts.weighted {
        g = g.unweighted();
    }
    Ok(g)
}

/// Σπ of any length-`p` sequence at window `w`.
pub fn total_pairs(p: usize, w: usize) -> u64 {
    (1..w).map(|d| p.saturating_sub(d) as u64).sum()
}

/// Whether `x` is a `w`-realization of `g` (vertex set, edges and, in
/// weighted mode, weights all equal).
pub fn realizes(x: &Sequence, g: &SeqGraph, w: usize) -> bool {
    if w < 2 || x.is_empty() || x.tokens().iter().any(|&t| t >= g.n()) {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &t in x.tokens() {
        seen[t] = true;
    }
    if seen.iter().any(|&s| !s) {
        return false;
    }
    match build_on(x, g.n(), BuildOptions::like(g, w)) {
        Ok(h) => h.edge_map() == g.edge_map(),
        Err(_) => false,
    }
}
