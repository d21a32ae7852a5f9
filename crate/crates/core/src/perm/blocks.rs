use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, StabilizerChain};

/// A partition of the domain into equal-size cells preserved by some group.
///
/// Cells are sorted internally and ordered by their least point, so equal
/// systems compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSystem {
    degree: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockSystem {
    pub fn new(degree: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = parts
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        let size = blocks.first().map_or(0, Vec::len);
        if size == 0 || blocks.iter().any(|b| b.len() != size) {
            return Err(Error::InvalidArgument("cells must be non-empty and of one size".into()));
        }
        let mut block_of = vec![usize::MAX; degree];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if block_of[x] != usize::MAX {
                    return Err(Error::InvalidArgument(format!("point {x} lies in two cells")));
                }
                block_of[x] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::InvalidArgument("cells do not cover the domain".into()));
        }
        Ok(BlockSystem {
            degree,
            blocks,
            block_of,
        })
    }

    fn from_labels(labels: &[usize]) -> Self {
        let degree = labels.len();
        let mut cells: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (x, &l) in labels.iter().enumerate() {
            cells.entry(l).or_default().push(x);
        }
        let parts: Vec<Vec<usize>> = cells.into_values().collect();
        BlockSystem::new(degree, parts).expect("labels from a transitive group give equal cells")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Singletons or a single cell.
    pub fn is_trivial(&self) -> bool {
        self.block_size() == 1 || self.block_count() == 1
    }

    /// Whether `g` maps cells to cells.
    pub fn is_preserved_by(&self, g: &Permutation) -> bool {
        self.blocks.iter().all(|b| {
            let target = self.block_of[g.apply(b[0])];
            b.iter().all(|&x| self.block_of[g.apply(x)] == target)
        })
    }

    pub fn is_invariant_under(&self, group: &PermGroup) -> bool {
        group.generators().iter().all(|g| self.is_preserved_by(g))
    }

    /// The permutation of cells induced by `g`.
    pub fn block_image(&self, g: &Permutation) -> Permutation {
        let images = self
            .blocks
            .iter()
            .map(|b| self.block_of[g.apply(b[0])])
            .collect();
        Permutation::new(images).expect("g preserves the system")
    }

    /// `g` acting on points and cells at once: points keep their labels,
    /// cell `i` becomes point `degree + i`.
    pub fn combined(&self, g: &Permutation) -> Permutation {
        let mut images = g.image_vec();
        images.extend(
            self.blocks
                .iter()
                .map(|b| self.degree + self.block_of[g.apply(b[0])]),
        );
        Permutation::new(images).expect("g preserves the system")
    }

    /// The induced group on the set of cells.
    pub fn block_action(&self, group: &PermGroup) -> PermGroup {
        let gens = group
            .generators()
            .iter()
            .map(|g| self.block_image(g))
            .collect();
        PermGroup::new(self.block_count(), gens).expect("degree is the block count")
    }

    /// Subgroup of `group` fixing the listed cells setwise and the listed
    /// points, computed through the combined action on points and cells.
    pub fn stabilizer(
        &self,
        group: &PermGroup,
        cells: &[usize],
        points: &[usize],
    ) -> Result<PermGroup> {
        let gens: Vec<Permutation> = group.generators().iter().map(|g| self.combined(g)).collect();
        let mut prefix: Vec<usize> = cells.iter().map(|&c| self.degree + c).collect();
        prefix.extend_from_slice(points);
        let chain = StabilizerChain::build(self.degree + self.block_count(), &gens, &prefix)?;
        let depth = chain
            .base()
            .iter()
            .take_while(|b| prefix.contains(b))
            .count();
        let domain: Vec<usize> = (0..self.degree).collect();
        let sub = chain
            .tail(depth)
            .strong_generators()
            .iter()
            .map(|g| g.restrict_to(&domain))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.degree, sub)
    }

    /// Kernel of the action on cells.
    pub fn kernel(&self, group: &PermGroup) -> Result<PermGroup> {
        let all: Vec<usize> = (0..self.block_count()).collect();
        self.stabilizer(group, &all, &[])
    }

    /// Setwise stabilizer of cell `i` acting on that cell (relabelled by
    /// position in the sorted cell).
    pub fn action_on_block(&self, group: &PermGroup, i: usize) -> Result<PermGroup> {
        self.stabilizer(group, &[i], &[])?.restrict_to(&self.blocks[i])
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Finest block system in which all of `seeds` share a cell (Atkinson's
/// union-find closure). Returns the one-cell system when the seeds force it.
pub fn minimal_block_containing(group: &PermGroup, seeds: &[usize]) -> Result<BlockSystem> {
    let n = group.degree();
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    for &x in seeds {
        if x >= n {
            return Err(Error::PointOutOfRange { point: x, degree: n });
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    let mut queue: Vec<(usize, usize)> = Vec::new();
    if let Some((&first, rest)) = seeds.split_first() {
        for &x in rest {
            let (a, b) = (find(&mut parent, first), find(&mut parent, x));
            if a != b {
                parent[b] = a;
                queue.push((first, x));
            }
        }
    }
    while let Some((x, y)) = queue.pop() {
        for g in group.generators() {
            let (gx, gy) = (g.apply(x), g.apply(y));
            let (a, b) = (find(&mut parent, gx), find(&mut parent, gy));
            if a != b {
                parent[b.max(a)] = a.min(b);
                queue.push((gx, gy));
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    Ok(BlockSystem::from_labels(&labels))
}

/// Finest block system whose cell holds both seed points.
pub fn minimal_block_system(group: &PermGroup, seed: (usize, usize)) -> Result<BlockSystem> {
    if seed.0 == seed.1 {
        return Err(Error::InvalidArgument("seed points must differ".into()));
    }
    minimal_block_containing(group, &[seed.0, seed.1])
}

/// Every nontrivial block system of a transitive group, found by testing
/// each union of point-stabilizer orbits through point 0. Capped at rank 16.
pub fn nontrivial_block_systems(group: &PermGroup) -> Result<Vec<BlockSystem>> {
    let suborbits = group.suborbits()?;
    let others = &suborbits[1..];
    if others.len() > 16 {
        return Err(Error::capacity("suborbit-union enumeration (rank)", 17u128));
    }
    let mut out: Vec<BlockSystem> = Vec::new();
    for mask in 1u32..(1 << others.len()) {
        let mut set = vec![0usize];
        for (i, o) in others.iter().enumerate() {
            if mask >> i & 1 == 1 {
                set.extend_from_slice(o);
            }
        }
        if set.len() == group.degree() || !group.degree().is_multiple_of(set.len()) {
            continue;
        }
        let sys = minimal_block_containing(group, &set)?;
        if sys.block(sys.block_of(0)).len() == set.len() && !out.contains(&sys) {
            out.push(sys);
        }
    }
    out.sort_by_key(|s| (s.block_size(), s.blocks().to_vec()));
    Ok(out)
}

/// Nontrivial block systems of a rank 3 group.
pub fn nontrivial_block_systems_rank3(group: &PermGroup) -> Result<Vec<BlockSystem>> {
    let rank = group.rank()?;
    if rank != 3 {
        return Err(Error::RankMismatch {
            expected: 3,
            found: rank,
        });
    }
    nontrivial_block_systems(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn primitive_group_gives_one_cell() {
        let s = minimal_block_system(&PermGroup::symmetric(4), (0, 1)).unwrap();
        assert_eq!(s.block_count(), 1);
    }

    #[test]
    fn cyclic_four() {
        let s = minimal_block_system(&PermGroup::cyclic(4), (0, 2)).unwrap();
        assert_eq!(s.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert!(s.is_invariant_under(&PermGroup::cyclic(4)));
    }

    #[test]
    fn kernel_and_block_action() {
        // Z2 wr S3 on six points, cells {0,1},{2,3},{4,5}.
        let g = PermGroup::new(
            6,
            vec![
                cyc(6, &[&[0, 1]]),
                cyc(6, &[&[0, 2, 4], &[1, 3, 5]]),
                cyc(6, &[&[0, 2], &[1, 3]]),
            ],
        )
        .unwrap();
        assert_eq!(g.order(), 48);
        let sys = minimal_block_system(&g, (0, 1)).unwrap();
        assert_eq!(sys.block_count(), 3);
        assert_eq!(sys.kernel(&g).unwrap().order(), 8);
        assert_eq!(sys.block_action(&g).order(), 6);
        assert_eq!(sys.action_on_block(&g, 0).unwrap().order(), 2);
        assert_eq!(sys.stabilizer(&g, &[0, 1], &[]).unwrap().order(), 8);
    }

    #[test]
    fn dihedral_square_systems() {
        let d8 = PermGroup::dihedral(4);
        let systems = nontrivial_block_systems_rank3(&d8).unwrap();
        // The only nontrivial system is the pair of diagonals.
        assert_eq!(systems.len(), 1);
        assert_eq!(systems[0].blocks(), &[vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn rank_must_be_three() {
        assert!(matches!(
            nontrivial_block_systems_rank3(&PermGroup::symmetric(4)),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(BlockSystem::new(4, vec![vec![0, 1], vec![2]]).is_err());
        assert!(BlockSystem::new(4, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(BlockSystem::new(4, vec![vec![0, 1], vec![2, 3]]).is_ok());
    }
}
