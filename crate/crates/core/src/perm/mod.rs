//! Permutations, stabilizer chains, orbits, ranks and block systems.

mod blocks;
mod chain;
mod classes;
mod group;
pub mod oracle;
mod permutation;
pub mod text;

pub use blocks::{
    minimal_block_containing, minimal_block_system, nontrivial_block_systems,
    nontrivial_block_systems_rank3, BlockSystem,
};
pub use chain::{StabilizerChain, EXPLICIT_TRANSVERSAL_DEGREE};
pub use classes::{
    center, centralizer, conjugacy_class_representatives, conjugacy_classes, derived_subgroup,
    filter_subgroup, normal_closure, ConjugacyClasses, DEFAULT_ENUMERATION_CAP,
};
pub use group::{orbit_of, PermGroup};
pub use permutation::{compose, Permutation, MAX_DEGREE};
