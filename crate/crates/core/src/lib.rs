//! Subgroup lattices of finite groups and the planarity of their subgroup graphs.
//!
//! The crate builds finite groups (Cayley tables, permutation generators, named
//! families), enumerates their subgroup lattices, decides planarity, outer-planarity
//! and Hasse-planarity with explicit certificates, and runs a corpus of checks that
//! tie the graph-side verdicts to the known classification of planar groups.

pub mod bitset;
pub mod classify;
pub mod error;
pub mod graph;
pub mod group;
pub mod lattice;
pub mod planarity;
pub mod suite;

pub use error::{Error, Result};
