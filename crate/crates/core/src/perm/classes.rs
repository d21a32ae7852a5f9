use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, StabilizerChain};

/// Default cap on element enumeration.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// Conjugacy classes of a group small enough to enumerate.
#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    /// One representative per class: the element of least enumeration index.
    pub representatives: Vec<Permutation>,
    pub sizes: Vec<u128>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

/// Conjugation orbits over the full element list, tracked by chain index.
pub fn conjugacy_classes(group: &PermGroup, cap: u128) -> Result<ConjugacyClasses> {
    let chain = group.chain();
    let order = chain.order();
    if order > cap {
        return Err(Error::capacity(
            format!("conjugacy class enumeration of a group of order {order}"),
            cap,
        ));
    }
    let mut seen = vec![false; order as usize];
    let mut representatives = Vec::new();
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..order as usize {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let rep = chain.element_at(start as u128);
        let mut size = 1u128;
        stack.push(rep.clone());
        while let Some(x) = stack.pop() {
            for s in group.generators() {
                let y = x.conjugate_by(s);
                let idx = chain.index_of(&y).expect("conjugate of a member") as usize;
                if !seen[idx] {
                    seen[idx] = true;
                    size += 1;
                    stack.push(y);
                }
            }
        }
        representatives.push(rep);
        sizes.push(size);
    }
    Ok(ConjugacyClasses {
        representatives,
        sizes,
    })
}

pub fn conjugacy_class_representatives(group: &PermGroup, cap: u128) -> Result<Vec<Permutation>> {
    Ok(conjugacy_classes(group, cap)?.representatives)
}

/// Smallest normal subgroup of `group` containing `elems`.
pub fn normal_closure(group: &PermGroup, elems: &[Permutation]) -> Result<PermGroup> {
    for e in elems {
        if e.degree() != group.degree() {
            return Err(Error::DegreeMismatch {
                expected: group.degree(),
                found: e.degree(),
            });
        }
        if !group.contains(e) {
            return Err(Error::NotMember);
        }
    }
    let mut chain = StabilizerChain::build(group.degree(), &[], &[])?;
    let mut gens: Vec<Permutation> = Vec::new();
    for e in elems {
        if chain.add_generator(e.clone())? {
            gens.push(e.clone());
        }
    }
    let mut i = 0;
    while i < gens.len() {
        for s in group.generators() {
            let c = gens[i].conjugate_by(s);
            if chain.add_generator(c.clone())? {
                gens.push(c);
            }
        }
        i += 1;
    }
    Ok(PermGroup::with_chain(gens, chain))
}

/// Centralizer of `sub` in `group` by filtering enumerated elements.
pub fn centralizer(group: &PermGroup, sub: &PermGroup, cap: u128) -> Result<PermGroup> {
    let elements = group.elements(cap)?;
    let mut chain = StabilizerChain::build(group.degree(), &[], &[])?;
    let mut gens = Vec::new();
    for g in elements {
        if sub.generators().iter().all(|h| g.commutes_with(h)) && chain.add_generator(g.clone())? {
            gens.push(g);
        }
    }
    Ok(PermGroup::with_chain(gens, chain))
}

/// Subgroup of elements satisfying `keep` (which must define a subgroup).
pub fn filter_subgroup<F>(group: &PermGroup, cap: u128, keep: F) -> Result<PermGroup>
where
    F: Fn(&Permutation) -> bool,
{
    let elements = group.elements(cap)?;
    let mut chain = StabilizerChain::build(group.degree(), &[], &[])?;
    let mut gens = Vec::new();
    for g in elements {
        if keep(&g) && chain.add_generator(g.clone())? {
            gens.push(g);
        }
    }
    Ok(PermGroup::with_chain(gens, chain))
}

/// Derived subgroup: normal closure of generator commutators.
pub fn derived_subgroup(group: &PermGroup) -> Result<PermGroup> {
    let gens = group.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.inverse().then(&b.inverse()).then(a).then(b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure(group, &comms)
}

/// Center by element filtering.
pub fn center(group: &PermGroup, cap: u128) -> Result<PermGroup> {
    centralizer(group, group, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn class_counts() {
        let cap = DEFAULT_ENUMERATION_CAP;
        let s4 = conjugacy_classes(&PermGroup::symmetric(4), cap).unwrap();
        assert_eq!(s4.len(), 5);
        assert_eq!(s4.sizes.iter().sum::<u128>(), 24);
        assert_eq!(conjugacy_class_representatives(&PermGroup::cyclic(4), cap).unwrap().len(), 4);
        assert_eq!(conjugacy_classes(&PermGroup::alternating(5), cap).unwrap().len(), 5);
    }

    #[test]
    fn cap_is_reported() {
        let err = conjugacy_classes(&PermGroup::symmetric(8), 1000).unwrap_err();
        assert!(err.is_capacity());
    }

    #[test]
    fn closures() {
        let s4 = PermGroup::symmetric(4);
        let v4 = normal_closure(&s4, &[cyc(4, &[&[0, 1], &[2, 3]])]).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.is_normalized_by(&s4));
        assert_eq!(normal_closure(&s4, &[cyc(4, &[&[0, 1]])]).unwrap().order(), 24);
        let a4 = PermGroup::alternating(4);
        assert_eq!(normal_closure(&a4, &[cyc(4, &[&[0, 1, 2]])]).unwrap().order(), 12);
        assert_eq!(
            normal_closure(&a4, &[cyc(4, &[&[0, 1]])]).unwrap_err(),
            Error::NotMember
        );
    }

    #[test]
    fn derived_and_center() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(derived_subgroup(&s4).unwrap().order(), 12);
        assert_eq!(center(&s4, 100).unwrap().order(), 1);
        assert_eq!(center(&PermGroup::dihedral(4), 100).unwrap().order(), 2);
    }
}
