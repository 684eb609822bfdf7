//! Sequence graphs (graphs-of-words): construction from token sequences,
//! realizability decisions, exact realization counting, ILP export and
//! generators for hardness and lower-bound instances.
//!
//! ```
//! use seqgraph::{build_words, dpcount, BuildOptions};
//!
//! let (g, _) = build_words("a b r a c a d a b r a", BuildOptions::new(3, true, true)).unwrap();
//! assert_eq!(dpcount::count(&g, 3, None).unwrap(), 6);
//! ```

pub mod builder;
pub mod count;
pub mod dpcount;
pub mod error;
pub mod format;
pub mod gadgets;
pub mod graph;
pub mod gu;
pub mod ilp;
pub mod multigraph;
pub mod oracle;
pub mod scc;
pub mod w2;

pub use builder::{build, build_labeled, build_words, realizes, BuildOptions};
pub use count::BigCount;
pub use error::{Error, Result};
pub use graph::{SeqGraph, Sequence, VertexId};
pub use multigraph::{eulerian_class, psi, EulerClass, MultiGraph};
pub use scc::{scc_condense, Condensation};
