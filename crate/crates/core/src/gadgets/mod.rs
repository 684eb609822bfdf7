//! Generators for the hardness reductions and the exponential-length
//! family, each paired with the explicit witness its construction
//! prescribes so that tests can check both directions constructively.

mod clique;
mod expo;
mod hamiltonian;
mod optional;
mod transform;

pub use clique::clique_gadget;
pub use expo::{expo, expo_capped, ExpoInstance, DEFAULT_EXPO_CAP};
pub use hamiltonian::{dw_ham, find_hamiltonian_path, gw_ham, hamiltonian_witness, pendant_ends};
pub use optional::{du_chain, optional_instance, optional_solve, optional_witness, DuChain, OptionalInstance};
pub use transform::{hp1, hp2};

use crate::error::{Error, Result};
use crate::graph::SeqGraph;

/// Rejects graphs of the wrong orientation, weighted graphs and self-loops.
fn require_plain(g: &SeqGraph, directed: bool) -> Result<()> {
    if g.is_directed() != directed {
        return Err(Error::WrongVariant(if directed { "directed" } else { "undirected" }));
    }
    if g.is_weighted() {
        return Err(Error::WrongVariant("unweighted"));
    }
    match g.edges().find(|&(u, v, _)| u == v) {
        Some((u, _, _)) => Err(Error::SelfLoop(u)),
        None => Ok(()),
    }
}

/// Empty graph over `labels`, falling back to plain ids if two labels clash.
fn labelled(labels: Vec<String>, directed: bool, weighted: bool) -> SeqGraph {
    let n = labels.len();
    SeqGraph::with_labels(labels, directed, weighted).unwrap_or_else(|_| SeqGraph::new(n, directed, weighted))
}

fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}
