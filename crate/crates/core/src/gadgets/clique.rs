//! Clique to GU realizability at window k + 1.

use super::{labelled, require_plain};
use crate::error::{Error, Result};
use crate::graph::SeqGraph;

/// Adds two looped vertices `a` (id n) and `b` (id n+1), each adjacent to
/// every vertex of `g` but not to each other. The result is realizable at
/// window `k + 1` exactly when `g` has a `k`-clique.
pub fn clique_gadget(g: &SeqGraph, k: usize) -> Result<(SeqGraph, usize)> {
    require_plain(g, false)?;
    if k == 0 {
        return Err(Error::Precondition("clique size must be positive".into()));
    }
    let n = g.n();
    let mut labels = g.labels().to_vec();
    labels.push("a".into());
    labels.push("b".into());
    let mut h = labelled(labels, false, false);
    for (u, v, _) in g.edges() {
        h.add_edge(u, v)?;
    }
    for x in [n, n + 1] {
        h.add_edge(x, x)?;
        for v in 0..n {
            h.add_edge(x, v)?;
        }
    }
    Ok((h, k + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::realizes;
    use crate::gu::gu_realizable;
    use crate::oracle::{find, has_clique};

    fn graph(n: usize, edges: &[(usize, usize)]) -> SeqGraph {
        let mut g = SeqGraph::new(n, false, false);
        for &(u, v) in edges {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    #[test]
    fn triangle_is_found() {
        let (h, w) = clique_gadget(&graph(3, &[(0, 1), (1, 2), (0, 2)]), 3).unwrap();
        assert_eq!(w, 4);
        let x = gu_realizable(&h, w).unwrap().expect("K3 holds a triangle");
        assert!(realizes(&x, &h, w));
    }

    #[test]
    fn path_has_no_triangle() {
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(!has_clique(&p4, 3));
        let (h, w) = clique_gadget(&p4, 3).unwrap();
        assert_eq!(gu_realizable(&h, w).unwrap(), None);
    }

    #[test]
    fn diamond_has_a_triangle() {
        let (h, w) = clique_gadget(&graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]), 3).unwrap();
        assert!(gu_realizable(&h, w).unwrap().is_some());
    }

    #[test]
    fn small_cases_agree_with_search() {
        // K2 with k = 2: "a a a 0 1 b b b" style witnesses at window 3
        let (h, w) = clique_gadget(&graph(2, &[(0, 1)]), 2).unwrap();
        let shortest = find(&h, w, 10).unwrap().expect("edge is a 2-clique");
        assert!(realizes(&shortest, &h, w));
        let (h, w) = clique_gadget(&graph(2, &[]), 2).unwrap();
        assert_eq!(find(&h, w, 9).unwrap(), None);
        assert_eq!(gu_realizable(&h, w).unwrap(), None);
    }
}
