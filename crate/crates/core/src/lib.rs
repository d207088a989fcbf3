//! Exact and fractional tilings of 3-graphs by the generalised triangle T.

pub mod copies;
mod cover;
pub mod error;
pub mod fractional;
pub mod generators;
pub mod hypergraph;
pub mod lattice;
#[cfg(any(test, feature = "oracles"))]
pub mod oracles;
pub mod rational;
mod simplex;
pub mod structure;
pub mod tiling;

pub use copies::{count_copies, enumerate_copies, supports_t, TCopy};
pub use error::{Error, Result};
pub use fractional::{FarkasCertificate, FracOutcome, FractionalTiling};
pub use hypergraph::{AvoidanceGraph, Bipartition, FiveGraph, ThreeGraph, Vertex};
pub use lattice::{IndexLattice, IndexVector, Partition};
pub use rational::Rational;
pub use tiling::{Outcome, RainbowInstance, Solve, Tiling};
