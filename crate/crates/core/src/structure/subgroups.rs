//! Exhaustive subgroup lattices of tiny groups, for reference checks.

use crate::error::{Error, Result};
use crate::structure::table::{count, members, SmallGroupTable};

/// Order cap for exhaustive subgroup enumeration.
pub const MAX_LATTICE_ORDER: usize = 256;

/// Every subgroup as a membership mask, sorted by order then mask.
///
/// Starts from the cyclic subgroups and closes under pairwise joins; every
/// subgroup is the join of the cyclic subgroups it contains.
pub fn all_subgroups(t: &SmallGroupTable) -> Result<Vec<Vec<bool>>> {
    if t.order() > MAX_LATTICE_ORDER {
        return Err(Error::capacity("subgroup lattice group order", MAX_LATTICE_ORDER as u128));
    }
    let mut all: Vec<Vec<bool>> = Vec::new();
    for x in 0..t.order() {
        let c = t.generate(&[x]);
        if !all.contains(&c) {
            all.push(c);
        }
    }
    let mut i = 0;
    while i < all.len() {
        for j in 0..i {
            let mut gens = members(&all[i]);
            gens.extend(members(&all[j]));
            let joined = t.generate(&gens);
            if !all.contains(&joined) {
                all.push(joined);
            }
        }
        i += 1;
    }
    all.sort_by(|a, b| count(a).cmp(&count(b)).then_with(|| b.cmp(a)));
    Ok(all)
}

fn is_subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

/// Maximal proper subgroups.
pub fn maximal_subgroups(t: &SmallGroupTable) -> Result<Vec<Vec<bool>>> {
    let all = all_subgroups(t)?;
    let n = t.order();
    let proper: Vec<&Vec<bool>> = all.iter().filter(|s| count(s) < n).collect();
    Ok(proper
        .iter()
        .filter(|s| {
            !proper
                .iter()
                .any(|u| count(u) > count(s) && is_subset(s, u))
        })
        .map(|s| (*s).clone())
        .collect())
}

/// Frattini subgroup as the intersection of maximal subgroups.
pub fn frattini_by_maximal_subgroups(t: &SmallGroupTable) -> Result<Vec<bool>> {
    let mut acc = vec![true; t.order()];
    for m in maximal_subgroups(t)? {
        for (a, b) in acc.iter_mut().zip(&m) {
            *a &= *b;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::abstract_props::frattini_p_group;
    use crate::structure::table::small::*;

    #[test]
    fn subgroup_counts() {
        assert_eq!(all_subgroups(&quaternion()).unwrap().len(), 6);
        assert_eq!(all_subgroups(&abelian(&[2, 2])).unwrap().len(), 5);
        assert_eq!(all_subgroups(&cyclic(12)).unwrap().len(), 6);
    }

    #[test]
    fn frattini_agrees_with_power_commutator_form() {
        for (t, p) in [
            (quaternion(), 2),
            (heisenberg(3), 3),
            (cyclic(9), 3),
            (abelian(&[4, 2]), 2),
            (abelian(&[2, 2, 2]), 2),
        ] {
            assert_eq!(frattini_by_maximal_subgroups(&t).unwrap(), frattini_p_group(&t, p));
        }
    }
}
