//! Spectral radii of bipartite graphs with a fixed number of edges.
//!
//! The crate builds the canonical graph of an integer partition and the
//! near-complete families `K⁻`, `K⁺`, `K^e` and `ᵉK`, computes spectral
//! radii by power iteration and in closed form, evaluates degree-sequence
//! upper bounds, and decides which non-complete bipartite graph with `e`
//! edges has the largest spectral radius.

pub mod bounds;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod partition;
pub mod primes;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Family};
pub use partition::Partition;
pub use spectral::{ExactRadical, SpectralResult};
