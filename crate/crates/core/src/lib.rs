//! Permutation-group toolkit for rank 3 imprimitive groups: stabilizer
//! chains, block systems and kernels, structural predicates, finite-field
//! linear families, and a classifier for rank 3 groups with affine block
//! action.
//!
//! Permutations act on the right: `a.then(&b)` is "first `a`, then `b`".
//! Points are 0-indexed in memory and 1-indexed in every text format.

pub mod analyzer;
pub mod catalog;
pub mod error;
pub mod exec;
pub mod json;
pub mod linear;
pub mod numtheory;
pub mod perm;
pub mod structure;
pub mod suite;

pub use error::{Error, Result};
pub use exec::Execution;
pub use perm::{BlockSystem, PermGroup, Permutation, StabilizerChain};
