//! Active learning of causal DAGs from interventions.
//!
//! * [`graph`]: partially directed graphs, LexBFS, perfect elimination
//!   orderings, greedy coloring and clique numbers.
//! * [`equivalence`]: intervention graphs, interventional Markov equivalence,
//!   essential graphs and their refinement by new targets.
//! * [`strategies`]: intervention target selection (`OptSingle`, `OptUnb`,
//!   one-shot separating targets and random/greedy baselines).
//! * [`simulate`]: the oracle active-learning study with survival curves and
//!   SHD traces.

pub mod corpus;
pub mod equivalence;
pub mod error;
pub mod graph;
pub mod simulate;
pub mod strategies;
pub mod verify;

pub use equivalence::{essential_graph, refine, EssentialGraph, TargetFamily};
pub use error::{Error, Result};
pub use graph::{Coloring, Graph, VertexOrdering};
