//! Exact computation, bounding and exhaustive verification of the maximum
//! number of `K_t` per vertex in graphs with maximum degree at most `Δ` and
//! clique number at most `ω`.

pub mod canon;
pub mod clique;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod rational;
pub mod search;
pub mod turan;
pub mod verify;

pub use canon::{canonical_form, canonical_labeling, is_isomorphic, CanonicalForm};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use rational::Rational;
