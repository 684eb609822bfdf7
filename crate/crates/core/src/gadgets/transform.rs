//! Vertex-splitting transforms from Hamiltonian cycle to Hamiltonian path.

use super::{labelled, require_plain};
use crate::error::Result;
use crate::graph::SeqGraph;

/// Splits vertex 0 into a copy keeping its out-arcs (id 0) and a new
/// copy receiving its in-arcs (id n). Hamiltonian cycles of `g` map to
/// Hamiltonian paths from 0 to n, and vertex 0 becomes a source.
pub fn hp1(g: &SeqGraph) -> Result<SeqGraph> {
    require_plain(g, true)?;
    let n = g.n();
    let mut labels = g.labels().to_vec();
    if n > 0 {
        labels[0] = format!("{}_out", g.label(0));
        labels.push(format!("{}_in", g.label(0)));
    }
    let mut h = labelled(labels, true, false);
    for (u, v, _) in g.edges() {
        h.add_edge(u, if v == 0 { n } else { v })?;
    }
    Ok(h)
}

/// Duplicates vertex 0 into ids 0 and n (same neighbourhood), then hangs
/// pendant `s` (id n+1) on 0 and pendant `t` (id n+2) on n.
pub fn hp2(g: &SeqGraph) -> Result<SeqGraph> {
    require_plain(g, false)?;
    let n = g.n();
    let mut labels = g.labels().to_vec();
    let base = if n > 0 { g.label(0).to_string() } else { "v".into() };
    labels.push(format!("{base}_copy"));
    labels.push("s".into());
    labels.push("t".into());
    let mut h = labelled(labels, false, false);
    for (u, v, _) in g.edges() {
        h.add_edge(u, v)?;
        if u == 0 {
            h.add_edge(n, v)?;
        } else if v == 0 {
            h.add_edge(u, n)?;
        }
    }
    if n > 0 {
        h.add_edge(n + 1, 0)?;
        h.add_edge(n + 2, n)?;
    }
    Ok(h)
}
