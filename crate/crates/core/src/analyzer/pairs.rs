//! Direct checks of the block-pair transitivity properties of rank 3
//! imprimitive groups, and of the sufficient condition "K_(B) transitive
//! on another block".

use serde::{Deserialize, Serialize};

use crate::analyzer::Rank3Report;
use crate::error::{Error, Result};
use crate::perm::{minimal_block_containing, nontrivial_block_systems, orbit_of, BlockSystem, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockPairCheck {
    /// `G_{B,B′}` is transitive on `B × B′`.
    pub pair_stabilizer_transitive_on_product: bool,
    /// `G_β` is transitive on the blocks other than `B`.
    pub point_stabilizer_transitive_on_other_blocks: bool,
    /// `|G_{B,B′} : G_{β,β′}|`.
    pub index: u128,
    /// `|B|²`.
    pub expected_index: u128,
}

impl BlockPairCheck {
    pub fn holds(&self) -> bool {
        self.pair_stabilizer_transitive_on_product
            && self.point_stabilizer_transitive_on_other_blocks
            && self.index == self.expected_index
    }
}

/// Checks the two transitivity statements and the index identity on the
/// block system recorded in `report`. Refuses groups of rank other than 3.
pub fn block_pair_check(report: &Rank3Report, group: &PermGroup) -> Result<BlockPairCheck> {
    if report.rank != 3 {
        return Err(Error::RankMismatch {
            expected: 3,
            found: report.rank,
        });
    }
    let imp = report
        .imprimitivity
        .as_ref()
        .ok_or_else(|| Error::Hypothesis("an imprimitive rank 3 group".into()))?;
    let seeds: Vec<usize> = imp.first_block.iter().map(|x| x - 1).collect();
    let system = minimal_block_containing(group, &seeds)?;
    if system.block_size() != imp.block_size {
        return Err(Error::InvalidArgument("report does not match the group".into()));
    }
    block_pair_check_on(group, &system)
}

/// The same checks on an explicit block system, for any transitive group.
pub fn block_pair_check_on(group: &PermGroup, system: &BlockSystem) -> Result<BlockPairCheck> {
    let b0 = system.block_of(0);
    let b1 = (0..system.block_count()).find(|&i| i != b0).expect("at least two blocks");
    let (beta, beta2) = (system.block(b0)[0], system.block(b1)[0]);
    let size = system.block_size();

    let pair = system.stabilizer(group, &[b0, b1], &[])?;
    let pointed = system.stabilizer(group, &[b0, b1], &[beta, beta2])?;
    let pair_orbit = pair_orbit_size(&pair, (beta, beta2));

    let stab = system.stabilizer(group, &[], &[beta])?;
    let cell_gens: Vec<_> = stab.generators().iter().map(|g| system.block_image(g)).collect();
    let cell_orbit = orbit_of(system.block_count(), &cell_gens, b1).len();

    Ok(BlockPairCheck {
        pair_stabilizer_transitive_on_product: pair_orbit == size * size,
        point_stabilizer_transitive_on_other_blocks: cell_orbit == system.block_count() - 1,
        index: pair.order() / pointed.order(),
        expected_index: (size * size) as u128,
    })
}

/// Size of the orbit of an ordered pair under the group.
fn pair_orbit_size(group: &PermGroup, start: (usize, usize)) -> usize {
    let n = group.degree();
    let mut seen = vec![false; n * n];
    seen[start.0 * n + start.1] = true;
    let mut queue = vec![start];
    let mut size = 1;
    while let Some((x, y)) = queue.pop() {
        for g in group.generators() {
            let (gx, gy) = (g.apply(x), g.apply(y));
            if !std::mem::replace(&mut seen[gx * n + gy], true) {
                size += 1;
                queue.push((gx, gy));
            }
        }
    }
    size
}

/// The first nontrivial block system on which both induced actions are
/// 2-transitive.
fn two_transitive_system(group: &PermGroup) -> Result<BlockSystem> {
    for system in nontrivial_block_systems(group)? {
        let b0 = system.block_of(0);
        if system.action_on_block(group, b0)?.rank()? == 2 && system.block_action(group).rank()? == 2 {
            return Ok(system);
        }
    }
    Err(Error::Hypothesis(
        "an imprimitive group with 2-transitive block group and block action".into(),
    ))
}

/// Whether `K_(B)` is transitive on a second block. When it is, the rank
/// must be 3; a different rank is reported as an error.
pub fn pointwise_kernel_check(group: &PermGroup) -> Result<bool> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let system = two_transitive_system(group)?;
    let b0 = system.block_of(0);
    let b1 = (0..system.block_count()).find(|&i| i != b0).expect("at least two blocks");
    let all: Vec<usize> = (0..system.block_count()).collect();
    let pointwise = system.stabilizer(group, &all, system.block(b0))?;
    let transitive = pointwise.orbit(system.block(b1)[0])?.len() == system.block_size();
    if transitive {
        let rank = group.rank()?;
        if rank != 3 {
            return Err(Error::RankMismatch { expected: 3, found: rank });
        }
    }
    Ok(transitive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzer::analyze;
    use crate::linear::examples::{build_affine_example, build_sum_zero_example, AffineExample};
    use crate::linear::family::{CosetTag, FamilyContext};
    use crate::perm::DEFAULT_ENUMERATION_CAP as CAP;

    #[test]
    fn gamma_family_index_nine() {
        let ctx = FamilyContext::new(3, 4, 3).unwrap();
        let fam = ctx.build(&[CosetTag { delta: 1, phi: 0 }, CosetTag { delta: 0, phi: 1 }]).unwrap();
        let r = analyze(&fam.group, CAP).unwrap();
        let c = block_pair_check(&r, &fam.group).unwrap();
        assert_eq!((c.index, c.expected_index), (9, 9));
        assert!(c.holds());
        assert!(!pointwise_kernel_check(&fam.group).unwrap());
    }

    #[test]
    fn refuses_rank_four() {
        let ctx = FamilyContext::new(3, 4, 3).unwrap();
        let fam = ctx.build(&[CosetTag { delta: 1, phi: 0 }]).unwrap();
        let r = analyze(&fam.group, CAP).unwrap();
        assert_eq!(r.rank, 4);
        assert!(matches!(block_pair_check(&r, &fam.group), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn pointwise_kernel_on_examples() {
        assert!(pointwise_kernel_check(&build_sum_zero_example(2, 2, 3).unwrap()).unwrap());
        assert!(!pointwise_kernel_check(&build_affine_example(AffineExample::G2).unwrap()).unwrap());
    }
}
