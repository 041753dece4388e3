//! Exact-arithmetic geometry of numbers.
//!
//! Lattices are given by rational generator rows. Determinants, Gram–Schmidt
//! data, successive minima, relevant Voronoï vectors and the verdicts of the
//! Minkowski-type inequalities are computed exactly; floating point appears only
//! in enumeration pruning (with a guard band, never in the final decision) and in
//! quantities that are transcendental by nature such as ball volumes.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod gso;
pub mod lattice;
pub mod linalg;
pub mod minima;
pub mod numtheory;
pub mod packing;
pub mod rational;
pub mod voronoi;

pub use error::{LatticeError, Result};
pub use lattice::{LatticeBasis, MeshPoint, UnimodularWitness};
pub use minima::{BoundReport, MinimaReport, Norm};
pub use rational::Rat;
