//! Structural predicates: semiprimitivity and relatives, socles, largest
//! normal p-subgroups, and brute-force automorphism groups of small groups.

pub mod abstract_props;
pub mod aut;
pub mod normal;
pub mod subgroups;
pub mod table;

pub use abstract_props::{
    automorphism_orbit_count, classify_regular_normal, frobenius_with_cyclic_complement,
    is_nonabelian_special, is_special, AutOrbitCount, RegularNormalClass,
};
pub use aut::{automorphism_group, AutomorphismGroup, DEFAULT_SEARCH_BUDGET, MAX_AUT_ORDER};
pub use normal::{
    all_normal_subgroups, is_innately_transitive, is_primitive, is_quasiprimitive,
    is_semiprimitive, largest_normal_p_subgroup, minimal_normal_subgroups, socle_and_type,
    structure_flags, ClassClosures, SocleInfo, SocleType, StructureFlags,
};
pub use table::SmallGroupTable;

use crate::error::Result;
use crate::perm::PermGroup;

/// Frobenius test for a permutation group through its multiplication table.
pub fn is_frobenius_with_cyclic_complement(group: &PermGroup, p: u64) -> Result<Option<(u32, usize)>> {
    let t = SmallGroupTable::from_perm_group(group)?;
    Ok(frobenius_with_cyclic_complement(&t, p))
}
