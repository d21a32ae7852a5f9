//! Exhaustive checks on tiny transitive linear groups: normal subgroups
//! with an invariant proper subspace are cyclic, and only `GL_3(2)` among
//! the small ones has a subgroup of index `p^d`.
//!
//! A linear group is given by semilinear generators on `F_q^m`; it is
//! regarded as a subgroup of `GL_d(p)` with `p^d = q^m`, so invariant
//! subspaces are the additive subgroups of the vector space.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linear::field::Field;
use crate::linear::space::{generators, LinearKind, Semilinear, VectorSpace};
use crate::perm::{orbit_of, PermGroup, Permutation};
use crate::structure::subgroups::all_subgroups;
use crate::structure::table::{count, members};
use crate::structure::SmallGroupTable;

/// An ambient linear group acting on all vectors, zero at point 0.
#[derive(Debug, Clone)]
pub struct LinearAmbient {
    pub name: String,
    pub space: VectorSpace,
    pub group: PermGroup,
}

impl LinearAmbient {
    pub fn new(name: &str, space: VectorSpace, gens: &[Semilinear]) -> Result<Self> {
        let perms = gens.iter().map(|g| g.on_all(&space)).collect::<Result<Vec<_>>>()?;
        let group = PermGroup::new(space.size(), perms)?;
        Ok(LinearAmbient {
            name: name.to_string(),
            space,
            group,
        })
    }

    /// `ΓL_1(p^d)` on `F_{p^d}`, generated by `x ↦ λx` and Frobenius.
    pub fn gamma_l1(p: u64, d: u32) -> Result<Self> {
        let k = Field::new(p, d)?;
        let space = VectorSpace::new(k.clone(), 1)?;
        let gens = [Semilinear::diagonal(&[k.lambda()]), Semilinear::frobenius(1, 1)];
        Self::new(&format!("GammaL_1({})", k.q()), space, &gens)
    }

    pub fn general_linear(d: usize, q: u64) -> Result<Self> {
        let (p, f) = crate::numtheory::as_prime_power(q)
            .ok_or_else(|| crate::Error::InvalidArgument(format!("{q} is not a prime power")))?;
        let k = Field::new(p, f)?;
        let space = VectorSpace::new(k.clone(), d)?;
        let gens = generators(LinearKind::GL, &k, d);
        Self::new(&format!("GL_{d}({q})"), space, &gens)
    }

    /// `(p, d)` of the containing `GL_d(p)`.
    pub fn prime_dimension(&self) -> (u64, u32) {
        let k = &self.space.field;
        (k.p() as u64, k.f() * self.space.d as u32)
    }

    /// Every proper nonzero `F_p`-subspace as a membership mask.
    pub fn proper_subspaces(&self) -> Vec<Vec<bool>> {
        let n = self.space.size();
        let close = |mask: &mut Vec<bool>| loop {
            let elems = members(mask);
            let mut grew = false;
            for &a in &elems {
                for &b in &elems {
                    let c = self.space.index(&self.space.add(&self.space.vector(a), &self.space.vector(b)));
                    if !mask[c] {
                        mask[c] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        };
        let mut zero = vec![false; n];
        zero[0] = true;
        let mut all = vec![zero];
        let mut i = 0;
        while i < all.len() {
            for v in 1..n {
                if all[i][v] {
                    continue;
                }
                let mut next = all[i].clone();
                next[v] = true;
                close(&mut next);
                if count(&next) < n && !all.contains(&next) {
                    all.push(next);
                }
            }
            i += 1;
        }
        all.remove(0);
        all
    }
}

/// The subgroups of an ambient group that are transitive on nonzero vectors,
/// with the ambient table they live in.
pub struct TransitiveSubgroups {
    pub table: SmallGroupTable,
    pub elements: Vec<Permutation>,
    pub subgroups: Vec<Vec<bool>>,
    pub transitive: Vec<Vec<bool>>,
}

pub fn transitive_subgroups(ambient: &LinearAmbient) -> Result<TransitiveSubgroups> {
    let elements = ambient.group.elements(crate::structure::table::MAX_TABLE_ORDER as u128)?;
    let table = SmallGroupTable::from_elements(&elements, |a, b| a.then(b))?;
    let subgroups = all_subgroups(&table)?;
    let n = ambient.space.size();
    let transitive = subgroups
        .iter()
        .filter(|s| {
            let gens: Vec<Permutation> = members(s).into_iter().map(|x| elements[x].clone()).collect();
            orbit_of(n, &gens, 1).len() == n - 1
        })
        .cloned()
        .collect();
    Ok(TransitiveSubgroups {
        table,
        elements,
        subgroups,
        transitive,
    })
}

fn is_subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

fn is_normal_in(t: &SmallGroupTable, sub: &[bool], over: &[bool]) -> bool {
    let s = members(sub);
    members(over)
        .into_iter()
        .all(|g| s.iter().all(|&x| sub[t.conjugate(x, g)]))
}

fn is_cyclic(t: &SmallGroupTable, sub: &[bool]) -> bool {
    let n = count(sub) as u64;
    members(sub).into_iter().any(|x| t.element_order(x) == n)
}

/// Per transitive subgroup: how many of its normal subgroups fix a proper
/// nonzero subspace, and whether all of those are cyclic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReducibleNormalRecord {
    pub ambient: String,
    pub order: usize,
    pub reducible_normal_subgroups: usize,
    pub all_cyclic: bool,
}

pub fn reducible_normal_check(ambient: &LinearAmbient) -> Result<Vec<ReducibleNormalRecord>> {
    let ts = transitive_subgroups(ambient)?;
    let subspaces = ambient.proper_subspaces();
    let mut out = Vec::new();
    for t in &ts.transitive {
        let mut reducible = 0;
        let mut all_cyclic = true;
        for r in ts.subgroups.iter().filter(|r| is_subset(r, t)) {
            if !is_normal_in(&ts.table, r, t) {
                continue;
            }
            let gens: Vec<&Permutation> = members(r).into_iter().map(|x| &ts.elements[x]).collect();
            let fixes_subspace = subspaces
                .iter()
                .any(|u| gens.iter().all(|g| members(u).into_iter().all(|x| u[g.apply(x)])));
            if fixes_subspace {
                reducible += 1;
                all_cyclic &= is_cyclic(&ts.table, r);
            }
        }
        out.push(ReducibleNormalRecord {
            ambient: ambient.name.clone(),
            order: count(t),
            reducible_normal_subgroups: reducible,
            all_cyclic,
        });
    }
    Ok(out)
}

/// Per transitive subgroup: whether it has a subgroup of index `p^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimePowerIndexRecord {
    pub ambient: String,
    pub order: usize,
    pub is_whole_group: bool,
    pub has_index_p_d: bool,
}

pub fn prime_power_index_check(ambient: &LinearAmbient) -> Result<Vec<PrimePowerIndexRecord>> {
    let ts = transitive_subgroups(ambient)?;
    let (p, d) = ambient.prime_dimension();
    let pd = p.pow(d) as usize;
    let whole = ts.table.order();
    Ok(ts
        .transitive
        .iter()
        .map(|t| {
            let n = count(t);
            let has = ts
                .subgroups
                .iter()
                .any(|u| is_subset(u, t) && count(u) * pd == n);
            PrimePowerIndexRecord {
                ambient: ambient.name.clone(),
                order: n,
                is_whole_group: n == whole,
                has_index_p_d: has,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts() {
        // F_2^3 has 7 lines and 7 planes; F_3^2 has 4 lines.
        assert_eq!(LinearAmbient::general_linear(3, 2).unwrap().proper_subspaces().len(), 14);
        assert_eq!(LinearAmbient::general_linear(2, 3).unwrap().proper_subspaces().len(), 4);
        assert_eq!(LinearAmbient::gamma_l1(3, 2).unwrap().proper_subspaces().len(), 4);
    }

    #[test]
    fn gl32_is_the_only_one_with_index_eight() {
        let recs = prime_power_index_check(&LinearAmbient::general_linear(3, 2).unwrap()).unwrap();
        let orders: Vec<usize> = recs.iter().map(|r| r.order).collect();
        assert!(orders.contains(&7) && orders.contains(&21) && orders.contains(&168));
        for r in recs {
            assert_eq!(r.has_index_p_d, r.is_whole_group, "{r:?}");
        }
    }

    #[test]
    fn reducible_normals_cyclic_small() {
        let recs = reducible_normal_check(&LinearAmbient::gamma_l1(2, 3).unwrap()).unwrap();
        assert!(recs.iter().all(|r| r.all_cyclic));
        assert_eq!(recs.len(), 2);
    }
}
