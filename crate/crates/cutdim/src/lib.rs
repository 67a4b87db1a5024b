//! Exact computation of the cut dimension of weighted undirected graphs,
//! constructions of extremal graph families, and the LP-based adversary
//! certifying deterministic linear-query lower bounds for minimum cut.
//!
//! All arithmetic is over arbitrary-precision rationals; there is no
//! floating point anywhere in the core.

pub mod approx;
pub mod constructors;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod laminar;
pub mod linalg;
pub mod lp;
pub mod ops;
pub mod rational;
pub mod verify;

pub use error::Error;
pub use graph::{char_vector, cut_weight, edge_index, CutVector, Graph, Shore};
pub use linalg::RationalMatrix;
pub use rational::Rat;

pub type Result<T> = std::result::Result<T, Error>;
