//! Odd cutsets of Z^d.
//!
//! A finite set S ⊂ Z^d is odd when its internal vertex boundary consists of
//! odd vertices only. This crate enumerates and counts the regular odd
//! cutsets that surround the origin, builds the explicit families that give
//! lower bounds, constructs the coarse-graining approximations behind the
//! upper bounds, and samples random cutsets.

pub mod approx;
pub mod approxbuild;
pub mod bounds;
pub mod constructions;
pub mod count_table;
pub mod enumerate;
pub mod error;
pub mod lattice;
pub mod oddsets;
pub mod sampler;

pub use error::{Error, Result};
pub use lattice::{BoxRegion, Direction, LatticeSet, Parity, Vertex};
