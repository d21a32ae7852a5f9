//! Properties of abstract small groups: p-group and special tests, Frobenius
//! shape, and the classification of regular normal subgroups whose
//! automorphism group has few orbits.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exec::Execution;
use crate::numtheory::{as_prime_power, factorize, is_prime};
use crate::structure::aut::{automorphism_group, AutomorphismGroup};
use crate::structure::table::{count, members, SmallGroupTable};

/// Shapes of groups N for which Aut(N) can have at most three orbits on N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularNormalClass {
    ElementaryAbelian,
    FrobeniusPq,
    HomocyclicP2,
    Special2Exp4,
    SpecialPExpP,
    NoneOfListed,
}

impl RegularNormalClass {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::ElementaryAbelian => "elementary-abelian",
            Self::FrobeniusPq => "frobenius-pq",
            Self::HomocyclicP2 => "homocyclic-p2",
            Self::Special2Exp4 => "special-2-exp4",
            Self::SpecialPExpP => "special-p-expp",
            Self::NoneOfListed => "none-of-listed",
        }
    }
}

/// The prime `p` if the group is a nontrivial p-group.
pub fn p_group_prime(t: &SmallGroupTable) -> Option<u64> {
    as_prime_power(t.order() as u64).map(|(p, _)| p)
}

pub fn is_elementary_abelian(t: &SmallGroupTable) -> bool {
    match p_group_prime(t) {
        Some(p) => t.is_abelian() && t.exponent() == p,
        None => false,
    }
}

/// Ω₁: elements whose order divides `p`.
pub fn omega_one(t: &SmallGroupTable, p: u64) -> Vec<bool> {
    (0..t.order()).map(|x| p.is_multiple_of(t.element_order(x))).collect()
}

/// Frattini subgroup of a p-group as `P^p P'`.
pub fn frattini_p_group(t: &SmallGroupTable, p: u64) -> Vec<bool> {
    let mut gens: Vec<usize> = (0..t.order()).map(|x| t.pow(x, p)).collect();
    gens.extend(members(&t.derived_subgroup()));
    gens.sort_unstable();
    gens.dedup();
    t.generate(&gens)
}

fn mask_is_elementary_abelian(t: &SmallGroupTable, mask: &[bool], p: u64) -> bool {
    let els = members(mask);
    els.iter().all(|&a| p.is_multiple_of(t.element_order(a)))
        && els.iter().all(|&a| els.iter().all(|&b| t.mul(a, b) == t.mul(b, a)))
}

/// Nonabelian p-group with `Z = N' = Φ(N)` elementary abelian.
pub fn is_nonabelian_special(t: &SmallGroupTable) -> bool {
    let Some(p) = p_group_prime(t) else {
        return false;
    };
    if t.is_abelian() {
        return false;
    }
    let z = t.center();
    let d = t.derived_subgroup();
    let phi = frattini_p_group(t, p);
    z == d && d == phi && mask_is_elementary_abelian(t, &z, p)
}

/// Special in the wide sense: elementary abelian or nonabelian special.
pub fn is_special(t: &SmallGroupTable) -> bool {
    is_elementary_abelian(t) || is_nonabelian_special(t)
}

/// Abelian p-group of exponent p² with `|Ω₁|² = |N|` (so `Z_{p²}^k`).
pub fn is_homocyclic_p2(t: &SmallGroupTable) -> bool {
    let Some(p) = p_group_prime(t) else {
        return false;
    };
    t.is_abelian() && t.exponent() == p * p && count(&omega_one(t, p)).pow(2) == t.order()
}

/// Largest normal p-subgroup: generated by the p-elements whose normal
/// closure is a p-group.
pub fn largest_normal_p_subgroup(t: &SmallGroupTable, p: u64) -> Vec<bool> {
    let mut gens = Vec::new();
    for x in 0..t.order() {
        if as_prime_power(t.element_order(x)).is_some_and(|(q, _)| q == p) {
            let c = count(&t.normal_closure(&[x])) as u64;
            if as_prime_power(c).is_some_and(|(q, _)| q == p) {
                gens.push(x);
            }
        }
    }
    t.generate(&gens)
}

/// Frobenius group `Z_p^a : R` with `R` cyclic acting fixed-point-freely.
/// Returns `(a, |R|)` on success.
pub fn frobenius_with_cyclic_complement(t: &SmallGroupTable, p: u64) -> Option<(u32, usize)> {
    if !is_prime(p) {
        return None;
    }
    let op = largest_normal_p_subgroup(t, p);
    let kernel = members(&op);
    let (q, a) = as_prime_power(kernel.len() as u64)?;
    if q != p || !mask_is_elementary_abelian(t, &op, p) {
        return None;
    }
    let m = t.order() / kernel.len();
    if m < 2 {
        return None;
    }
    let fixed_point_free = |c: usize| {
        kernel
            .iter()
            .all(|&k| k == t.identity() || t.conjugate(k, c) != k)
    };
    (0..t.order())
        .find(|&c| {
            t.element_order(c) == m as u64
                && (1..m as u64).all(|e| fixed_point_free(t.pow(c, e)))
        })
        .map(|_| (a, m))
}

/// Frobenius {p, q}-group: normal elementary abelian Sylow p-subgroup with a
/// complement of prime order q acting fixed-point-freely.
pub fn is_frobenius_pq(t: &SmallGroupTable) -> bool {
    let f = factorize(t.order() as u64);
    if f.len() != 2 {
        return false;
    }
    f.iter().any(|&(p, _)| {
        frobenius_with_cyclic_complement(t, p).is_some_and(|(_, m)| is_prime(m as u64))
    })
}

pub fn classify_regular_normal(t: &SmallGroupTable) -> RegularNormalClass {
    if is_elementary_abelian(t) {
        return RegularNormalClass::ElementaryAbelian;
    }
    if is_homocyclic_p2(t) {
        return RegularNormalClass::HomocyclicP2;
    }
    if is_nonabelian_special(t) {
        let p = p_group_prime(t).expect("special groups are p-groups");
        let e = t.exponent();
        if p == 2 && e == 4 {
            return RegularNormalClass::Special2Exp4;
        }
        if p != 2 && e == p {
            return RegularNormalClass::SpecialPExpP;
        }
    }
    if is_frobenius_pq(t) {
        return RegularNormalClass::FrobeniusPq;
    }
    RegularNormalClass::NoneOfListed
}

#[derive(Debug, Clone)]
pub struct AutOrbitCount {
    pub orbit_count: usize,
    pub class: RegularNormalClass,
    pub aut_order: usize,
    pub orbit_sizes: Vec<usize>,
    pub aut: AutomorphismGroup,
}

/// Number of Aut(T)-orbits on T, with the shape classification.
pub fn automorphism_orbit_count(t: &SmallGroupTable, budget: u64, exec: Execution) -> Result<AutOrbitCount> {
    let aut = automorphism_group(t, budget, exec)?;
    let orbits = aut.orbits(t.order());
    let mut orbit_sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    orbit_sizes.sort_unstable();
    Ok(AutOrbitCount {
        orbit_count: orbits.len(),
        class: classify_regular_normal(t),
        aut_order: aut.order(),
        orbit_sizes,
        aut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermGroup;
    use crate::structure::aut::DEFAULT_SEARCH_BUDGET;
    use crate::structure::table::small::*;

    #[test]
    fn few_orbit_shapes() {
        let cases = [
            (abelian(&[2, 2, 2]), 2, RegularNormalClass::ElementaryAbelian),
            (cyclic(9), 3, RegularNormalClass::HomocyclicP2),
            (quaternion(), 3, RegularNormalClass::Special2Exp4),
            (from_perm_group(&PermGroup::alternating(4)), 3, RegularNormalClass::FrobeniusPq),
            (heisenberg(3), 3, RegularNormalClass::SpecialPExpP),
            (cyclic(8), 4, RegularNormalClass::NoneOfListed),
        ];
        for (t, orbits, class) in cases {
            let r = automorphism_orbit_count(&t, DEFAULT_SEARCH_BUDGET, Execution::Sequential).unwrap();
            assert_eq!((r.orbit_count, r.class), (orbits, class), "order {}", t.order());
        }
    }

    #[test]
    fn frobenius_witnesses() {
        let s3 = from_perm_group(&PermGroup::symmetric(3));
        assert_eq!(frobenius_with_cyclic_complement(&s3, 3), Some((1, 2)));
        let t = crate::perm::Permutation::new(vec![1, 2, 3, 4, 0]).unwrap();
        let m = crate::perm::Permutation::new(vec![0, 2, 4, 1, 3]).unwrap();
        let agl = from_perm_group(&PermGroup::new(5, vec![t, m]).unwrap());
        assert_eq!(frobenius_with_cyclic_complement(&agl, 5), Some((1, 4)));
        let d8 = from_perm_group(&PermGroup::dihedral(4));
        assert_eq!(frobenius_with_cyclic_complement(&d8, 2), None);
    }

    #[test]
    fn homocyclic_and_special() {
        assert!(is_homocyclic_p2(&abelian(&[4, 4])));
        assert!(!is_homocyclic_p2(&abelian(&[4, 2])));
        assert!(is_nonabelian_special(&quaternion()));
        assert!(is_nonabelian_special(&from_perm_group(&PermGroup::dihedral(4))));
        assert!(is_special(&abelian(&[3, 3])));
    }
}
