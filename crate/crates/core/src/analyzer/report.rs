use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::structure::{RegularNormalClass, SocleType, StructureFlags};

/// The four classes of rank 3 groups with affine block group, plus a tag
/// for groups the classifier does not apply to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rank3Class {
    A,
    B,
    C,
    D,
    #[serde(rename = "not-applicable")]
    NotApplicable,
}

impl fmt::Display for Rank3Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
            Self::D => "D",
            Self::NotApplicable => "not-applicable",
        })
    }
}

impl FromStr for Rank3Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "A" | "a" => Ok(Self::A),
            "B" | "b" => Ok(Self::B),
            "C" | "c" => Ok(Self::C),
            "D" | "d" => Ok(Self::D),
            "not-applicable" => Ok(Self::NotApplicable),
            _ => Err(Error::InvalidArgument(format!("unknown class `{s}`"))),
        }
    }
}

/// An induced permutation group (on a block, or on the set of blocks).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InducedAction {
    pub degree: usize,
    pub order: u128,
    pub two_transitive: bool,
    /// `None` when the socle computation hit a capacity limit.
    pub socle_type: Option<SocleType>,
    pub socle_order: Option<u128>,
}

/// Block data of a rank 3 imprimitive group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Imprimitivity {
    pub block_system_count: usize,
    pub block_size: usize,
    pub block_count: usize,
    /// The block containing point 1, 1-indexed.
    pub first_block: Vec<usize>,
    pub kernel_order: u128,
    pub kernel_semiregular: bool,
    /// K induces a regular group on each block.
    pub kernel_regular_on_block: bool,
    /// Order of K_(B), the pointwise stabilizer of the first block in K.
    pub kernel_pointwise_order: u128,
    pub kernel_pointwise_transitive_on_other_block: bool,
    pub block_group: InducedAction,
    pub block_action: InducedAction,
    /// The prime of the affine block group.
    pub affine_prime: Option<u64>,
    /// Order of L = O_p(K).
    pub l_order: Option<u128>,
    pub l_elementary_abelian: Option<bool>,
    pub centralizer_equals_l: Option<bool>,
}

/// A regular normal subgroup found by the class (B) search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegularNormalEvidence {
    pub order: u128,
    pub shape: RegularNormalClass,
    pub automorphism_group_order: usize,
    pub automorphism_orbit_count: usize,
    pub automorphism_orbit_sizes: Vec<usize>,
    pub candidates_examined: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrobeniusKernel {
    /// `K ≅ Z_p^a : R`.
    pub a: u32,
    pub complement_order: usize,
}

/// Evidence gathered for class (D): what a group outside (A)–(C) must
/// look like.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Forensics {
    pub kernel_pointwise_nontrivial_intransitive: bool,
    pub frobenius_kernel: Option<FrobeniusKernel>,
    /// `log_p |B|`.
    pub block_dimension: u32,
    /// `a > log_p |B|` for the Frobenius kernel.
    pub frobenius_exponent_exceeds_block_dimension: Option<bool>,
    pub self_centralizing_elementary_abelian_normal: Option<bool>,
}

/// Clause-by-clause record. Every clause is evaluated even after an
/// earlier one decides the class, so overlaps stay visible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ClassEvidence {
    /// Why the classifier does not apply, if it does not.
    pub out_of_scope: Option<String>,
    pub innately_transitive: Option<bool>,
    /// For semiprimitive groups that are not innately transitive with
    /// K ≠ 1: the recognised shape (`3.S6`, `2.M12` or a projective
    /// linear family), if any.
    pub listed_semiprimitive_shape: Option<String>,
    /// K is the unique minimal normal subgroup and is semiregular.
    pub kernel_unique_minimal_semiregular: Option<bool>,
    /// Every nontrivial class closure is transitive or inside K.
    pub closures_transitive_or_in_kernel: Option<bool>,
    pub regular_normal: Option<RegularNormalEvidence>,
    pub forensics: Option<Forensics>,
    pub clause_a: Option<bool>,
    pub clause_b: Option<bool>,
    pub clause_c: Option<bool>,
    pub clause_d: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rank3Report {
    pub degree: usize,
    pub order: u128,
    pub rank: usize,
    pub subdegrees: Vec<usize>,
    pub flags: Option<StructureFlags>,
    pub imprimitivity: Option<Imprimitivity>,
    pub class: Rank3Class,
    pub evidence: ClassEvidence,
    /// Steps skipped because a capacity limit was hit.
    pub capacity_skips: Vec<String>,
}

impl Rank3Report {
    pub fn block_data(&self) -> Option<(usize, usize)> {
        self.imprimitivity
            .as_ref()
            .map(|i| (i.block_size, i.block_count))
    }

    /// `|B| · n = degree` and `|K| · |G^𝓑| = |G|`.
    pub fn counting_identities_hold(&self) -> bool {
        match &self.imprimitivity {
            None => true,
            Some(i) => {
                i.block_size * i.block_count == self.degree
                    && i.kernel_order * i.block_action.order == self.order
            }
        }
    }
}
