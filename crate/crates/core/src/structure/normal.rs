//! Normal-subgroup predicates on permutation groups, decided through the
//! normal closures of conjugacy-class representatives.
//!
//! Every nontrivial normal subgroup N contains the closure of each of its
//! nontrivial elements, and those closures are class closures. So:
//! - some normal N is intransitive and not semiregular iff some class closure
//!   is: pick x ≠ 1 in N fixing a point; its closure lies in N (hence is
//!   intransitive) and contains x (hence is not semiregular);
//! - the minimal normal subgroups are exactly the minimal class closures;
//! - O_p(G) is generated by the classes whose closure is a p-group.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::prime_power_exponent;
use crate::perm::{
    centralizer, conjugacy_classes, minimal_block_system, normal_closure, PermGroup, Permutation,
};

/// The structural flags of a transitive group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFlags {
    pub semiregular: bool,
    pub semiprimitive: bool,
    pub quasiprimitive: bool,
    pub innately_transitive: bool,
    pub primitive: bool,
}

impl StructureFlags {
    /// primitive ⇒ quasiprimitive ⇒ innately transitive ⇒ semiprimitive.
    pub fn implication_chain_holds(&self) -> bool {
        (!self.primitive || self.quasiprimitive)
            && (!self.quasiprimitive || self.innately_transitive)
            && (!self.innately_transitive || self.semiprimitive)
    }
}

/// Class representatives of a group together with their normal closures.
#[derive(Debug, Clone)]
pub struct ClassClosures {
    pub group: PermGroup,
    /// Nontrivial class representatives.
    pub representatives: Vec<Permutation>,
    pub closures: Vec<PermGroup>,
}

impl ClassClosures {
    pub fn compute(group: &PermGroup, cap: u128) -> Result<Self> {
        let classes = conjugacy_classes(group, cap)?;
        let representatives: Vec<Permutation> = classes
            .representatives
            .into_iter()
            .filter(|x| !x.is_identity())
            .collect();
        let closures = representatives
            .iter()
            .map(|x| normal_closure(group, std::slice::from_ref(x)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassClosures {
            group: group.clone(),
            representatives,
            closures,
        })
    }

    pub fn is_semiprimitive(&self) -> bool {
        self.closures
            .iter()
            .all(|n| n.is_transitive() || n.is_semiregular())
    }

    pub fn is_quasiprimitive(&self) -> bool {
        self.closures.iter().all(PermGroup::is_transitive)
    }

    /// Minimal class closures, deduplicated, in order of first appearance.
    pub fn minimal_normal_subgroups(&self) -> Vec<PermGroup> {
        let mut out: Vec<PermGroup> = Vec::new();
        for (i, n) in self.closures.iter().enumerate() {
            let has_smaller = self.closures.iter().enumerate().any(|(j, m)| {
                j != i && m.order() < n.order() && n.contains_group(m)
            });
            if !has_smaller && !out.iter().any(|m| m.same_group(n)) {
                out.push(n.clone());
            }
        }
        out
    }

    pub fn is_innately_transitive(&self) -> bool {
        self.minimal_normal_subgroups()
            .iter()
            .any(PermGroup::is_transitive)
    }

    /// O_p(G): the join of the class closures that are p-groups.
    pub fn largest_normal_p_subgroup(&self, p: u64) -> Result<PermGroup> {
        let mut gens = Vec::new();
        for (x, n) in self.representatives.iter().zip(&self.closures) {
            if is_p_power(n.order(), p) {
                gens.push(x.clone());
            }
        }
        normal_closure(&self.group, &gens)
    }
}

fn is_p_power(n: u128, p: u64) -> bool {
    u64::try_from(n)
        .ok()
        .and_then(|n| prime_power_exponent(n, p))
        .is_some()
}

/// Whether no nontrivial block system exists (for a transitive group).
pub fn is_primitive(group: &PermGroup) -> Result<bool> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    for orb in group.suborbits()?.iter().skip(1) {
        if minimal_block_system(group, (0, orb[0]))?.block_count() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn structure_flags(group: &PermGroup, cap: u128) -> Result<StructureFlags> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let cc = ClassClosures::compute(group, cap)?;
    Ok(StructureFlags {
        semiregular: group.is_semiregular(),
        semiprimitive: cc.is_semiprimitive(),
        quasiprimitive: cc.is_quasiprimitive(),
        innately_transitive: cc.is_innately_transitive(),
        primitive: is_primitive(group)?,
    })
}

pub fn is_semiprimitive(group: &PermGroup, cap: u128) -> Result<bool> {
    Ok(ClassClosures::compute(group, cap)?.is_semiprimitive())
}

pub fn is_quasiprimitive(group: &PermGroup, cap: u128) -> Result<bool> {
    Ok(ClassClosures::compute(group, cap)?.is_quasiprimitive())
}

pub fn minimal_normal_subgroups(group: &PermGroup, cap: u128) -> Result<Vec<PermGroup>> {
    Ok(ClassClosures::compute(group, cap)?.minimal_normal_subgroups())
}

pub fn is_innately_transitive(group: &PermGroup, cap: u128) -> Result<bool> {
    Ok(ClassClosures::compute(group, cap)?.is_innately_transitive())
}

pub fn largest_normal_p_subgroup(group: &PermGroup, p: u64, cap: u128) -> Result<PermGroup> {
    ClassClosures::compute(group, cap)?.largest_normal_p_subgroup(p)
}

/// Every normal subgroup, obtained by closing the class closures under
/// pairwise joins. Independent of the single-closure criteria above.
pub fn all_normal_subgroups(group: &PermGroup, cap: u128) -> Result<Vec<PermGroup>> {
    let cc = ClassClosures::compute(group, cap)?;
    let mut all: Vec<PermGroup> = vec![PermGroup::trivial(group.degree())];
    for n in cc.closures {
        if !all.iter().any(|m| m.same_group(&n)) {
            all.push(n);
        }
    }
    let mut i = 0;
    while i < all.len() {
        let mut j = 0;
        while j < i {
            if !all[i].contains_group(&all[j]) && !all[j].contains_group(&all[i]) {
                let joined = all[i].join(&all[j])?;
                if !all.iter().any(|m| m.same_group(&joined)) {
                    all.push(joined);
                }
            }
            j += 1;
        }
        i += 1;
    }
    Ok(all)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SocleType {
    Affine,
    AlmostSimple,
    Other,
}

#[derive(Debug, Clone)]
pub struct SocleInfo {
    pub socle: PermGroup,
    pub kind: SocleType,
}

/// Socle as the join of the minimal normal subgroups, and its type.
///
/// Affine: abelian and regular. Almost simple: a unique minimal normal
/// subgroup, nonabelian and simple, with trivial centralizer.
pub fn socle_and_type(group: &PermGroup, require_2transitive: bool, cap: u128) -> Result<SocleInfo> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if require_2transitive {
        let rank = group.rank()?;
        if rank != 2 {
            return Err(Error::RankMismatch {
                expected: 2,
                found: rank,
            });
        }
    }
    let minimal = minimal_normal_subgroups(group, cap)?;
    let mut socle = PermGroup::trivial(group.degree());
    for m in &minimal {
        socle = socle.join(m)?;
    }
    let kind = if socle.is_abelian() && socle.is_regular() {
        SocleType::Affine
    } else if minimal.len() == 1
        && !socle.is_abelian()
        && centralizer(group, &socle, cap)?.order() == 1
        && is_simple(&socle, cap)?
    {
        SocleType::AlmostSimple
    } else {
        SocleType::Other
    };
    Ok(SocleInfo { socle, kind })
}

/// Whether a nontrivial group has no proper nontrivial normal subgroup.
pub fn is_simple(group: &PermGroup, cap: u128) -> Result<bool> {
    if group.order() == 1 {
        return Ok(false);
    }
    let cc = ClassClosures::compute(group, cap)?;
    let order = group.order();
    Ok(cc.closures.iter().all(|n| n.order() == order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::DEFAULT_ENUMERATION_CAP as CAP;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn agl1(p: usize, primitive_root: usize) -> PermGroup {
        let t = Permutation::new((0..p).map(|x| (x + 1) % p).collect()).unwrap();
        let m = Permutation::new((0..p).map(|x| x * primitive_root % p).collect()).unwrap();
        PermGroup::new(p, vec![t, m]).unwrap()
    }

    #[test]
    fn predicates_on_small_groups() {
        let d8 = PermGroup::dihedral(4);
        assert!(!is_semiprimitive(&d8, CAP).unwrap());
        assert!(is_quasiprimitive(&PermGroup::alternating(5), CAP).unwrap());
        assert!(!is_quasiprimitive(&PermGroup::cyclic(4), CAP).unwrap());
        assert!(is_innately_transitive(&PermGroup::alternating(4), CAP).unwrap());
        let mins = minimal_normal_subgroups(&PermGroup::symmetric(4), CAP).unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 4);
    }

    #[test]
    fn flags_chain() {
        for g in [
            PermGroup::symmetric(4),
            PermGroup::dihedral(4),
            PermGroup::dihedral(5),
            PermGroup::cyclic(6),
            agl1(5, 2),
        ] {
            let f = structure_flags(&g, CAP).unwrap();
            assert!(f.implication_chain_holds(), "{f:?}");
        }
    }

    #[test]
    fn socles() {
        let a = socle_and_type(&agl1(5, 2), true, CAP).unwrap();
        assert_eq!(a.kind, SocleType::Affine);
        assert_eq!(a.socle.order(), 5);
        let s = socle_and_type(&PermGroup::symmetric(6), true, CAP).unwrap();
        assert_eq!(s.kind, SocleType::AlmostSimple);
        assert_eq!(s.socle.order(), 360);
        assert!(socle_and_type(&PermGroup::dihedral(4), true, CAP).is_err());
    }

    #[test]
    fn largest_p_subgroups() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(largest_normal_p_subgroup(&s4, 2, CAP).unwrap().order(), 4);
        assert_eq!(largest_normal_p_subgroup(&s4, 3, CAP).unwrap().order(), 1);
    }

    #[test]
    fn all_normal_subgroups_of_s4() {
        let orders: Vec<u128> = {
            let mut v: Vec<u128> = all_normal_subgroups(&PermGroup::symmetric(4), CAP)
                .unwrap()
                .iter()
                .map(PermGroup::order)
                .collect();
            v.sort();
            v
        };
        assert_eq!(orders, vec![1, 4, 12, 24]);
        let k = PermGroup::new(4, vec![cyc(4, &[&[0, 1], &[2, 3]])]).unwrap();
        assert!(k.is_semiregular());
    }
}
