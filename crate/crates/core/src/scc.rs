//! Strongly connected components and the weighted condensation R⁺(G).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{SeqGraph, VertexId};

/// SCC partition with the condensation DAG.
///
/// Components are listed in topological order of the DAG, and every
/// component's vertices are sorted. `dag_weights[(a, b)]` is the number of
/// distinct arcs of G from component `a` to component `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    pub components: Vec<Vec<VertexId>>,
    pub component_of: Vec<usize>,
    pub dag_weights: BTreeMap<(usize, usize), u64>,
}

impl Condensation {
    pub fn dag_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.dag_weights.keys().copied()
    }

    /// The DAG as a directed unweighted graph on component indices.
    pub fn to_graph(&self) -> SeqGraph {
        let mut g = SeqGraph::new(self.components.len(), true, false);
        for (a, b) in self.dag_edges() {
            g.add_edge(a, b).expect("dag edges are distinct");
        }
        g
    }

    /// The DAG is a directed path through every component.
    pub fn is_path(&self) -> bool {
        let c = self.components.len();
        self.dag_weights.len() + 1 == c && (0..c.saturating_sub(1)).all(|i| self.dag_weights.contains_key(&(i, i + 1)))
    }
}

/// Tarjan's algorithm, iterative so deep graphs do not exhaust the stack.
pub fn scc_condense(g: &SeqGraph) -> Result<Condensation> {
    if !g.is_directed() {
        return Err(Error::WrongVariant("directed"));
    }
    let n = g.n();
    let adj = g.out_adjacency();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<VertexId> = Vec::new();
    let mut comps: Vec<Vec<VertexId>> = Vec::new();
    let mut next = 0usize;
    // (vertex, next neighbour position)
    let mut call: Vec<(VertexId, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < adj[v].len() {
                let u = adj[v][*pos];
                *pos += 1;
                if index[u] == UNSEEN {
                    index[u] = next;
                    low[u] = next;
                    next += 1;
                    stack.push(u);
                    on_stack[u] = true;
                    call.push((u, 0));
                } else if on_stack[u] {
                    low[v] = low[v].min(index[u]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let x = stack.pop().expect("tarjan stack");
                        on_stack[x] = false;
                        comp.push(x);
                        if x == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    // Tarjan emits sinks first.
    comps.reverse();
    let mut component_of = vec![0; n];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            component_of[v] = c;
        }
    }
    let mut dag_weights = BTreeMap::new();
    for (u, v, _) in g.edges() {
        let (a, b) = (component_of[u], component_of[v]);
        if a != b {
            *dag_weights.entry((a, b)).or_insert(0) += 1;
        }
    }
    Ok(Condensation {
        components: comps,
        component_of,
        dag_weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digraph(n: usize, arcs: &[(usize, usize)]) -> SeqGraph {
        let mut g = SeqGraph::new(n, true, false);
        for &(u, v) in arcs {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    #[test]
    fn simple_step_examples() {
        // 1↔2, 1→3, 4→2, 3↔4 with ids shifted down by one
        let a = digraph(4, &[(0, 1), (1, 0), (0, 2), (3, 1), (2, 3), (3, 2)]);
        let c = scc_condense(&a).unwrap();
        assert_eq!(c.components, vec![vec![0, 1, 2, 3]]);
        assert!(c.dag_weights.is_empty());

        let b = digraph(4, &[(0, 1), (1, 0), (0, 2), (1, 3), (2, 3), (3, 2)]);
        let c = scc_condense(&b).unwrap();
        assert_eq!(c.components, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(c.dag_weights.into_iter().collect::<Vec<_>>(), vec![((0, 1), 2)]);
    }

    #[test]
    fn singleton_and_undirected() {
        let c = scc_condense(&SeqGraph::new(1, true, false)).unwrap();
        assert_eq!(c.components, vec![vec![0]]);
        assert!(c.is_path());
        assert!(scc_condense(&SeqGraph::new(1, false, false)).is_err());
    }

    #[test]
    fn components_are_topologically_ordered() {
        let g = digraph(5, &[(4, 3), (3, 2), (2, 1), (1, 0), (0, 1)]);
        let c = scc_condense(&g).unwrap();
        assert_eq!(c.components, vec![vec![4], vec![3], vec![2], vec![0, 1]]);
        assert!(c.is_path());
        let again = scc_condense(&c.to_graph()).unwrap();
        assert!(again.components.iter().all(|k| k.len() == 1));
    }
}
