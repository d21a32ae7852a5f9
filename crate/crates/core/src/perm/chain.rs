//! Deterministic Schreier–Sims.
//!
//! Every Schreier generator of every level is sifted through the levels below
//! before construction returns, so the order read off a chain is certified.
//! Base points come from an optional caller prefix, then from the least point
//! moved by each new strong generator.
//!
//! Transversals are Schreier trees (a generator index and a predecessor per
//! orbit point, i.e. words over the strong generators). For degrees up to
//! [`EXPLICIT_TRANSVERSAL_DEGREE`] the inverse coset representatives are also
//! kept explicitly, which makes sifting linear in the degree.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Degree up to which inverse coset representatives are stored explicitly.
pub const EXPLICIT_TRANSVERSAL_DEGREE: usize = 2048;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Indices into the strong generator list; every one fixes the earlier base points.
    gens: Vec<usize>,
    orbit: Vec<u16>,
    /// Orbit position of each point, or `NONE`.
    position: Vec<u32>,
    /// Per orbit position: strong generator index and predecessor point.
    tree: Vec<(u32, u16)>,
    /// Per orbit position: the inverse of the coset representative.
    inv_reps: Option<Vec<Permutation>>,
    pending: VecDeque<(u32, u32)>,
}

impl Level {
    fn new(base: usize, degree: usize, explicit: bool) -> Self {
        let mut position = vec![NONE; degree];
        position[base] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base as u16],
            position,
            tree: vec![(NONE, base as u16)],
            inv_reps: explicit.then(|| vec![Permutation::identity(degree)]),
            pending: VecDeque::new(),
        }
    }
}

/// Base, strong generators and basic orbits of a permutation group.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    strong: Vec<Permutation>,
    strong_inv: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Builds a chain for `<generators>` whose base starts with `base_prefix`.
    pub fn build(
        degree: usize,
        generators: &[Permutation],
        base_prefix: &[usize],
    ) -> Result<Self> {
        let explicit = degree <= EXPLICIT_TRANSVERSAL_DEGREE;
        let mut chain = StabilizerChain {
            degree,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
        };
        for &b in base_prefix {
            if b >= degree {
                return Err(Error::PointOutOfRange { point: b, degree });
            }
            if chain.levels.iter().any(|l| l.base == b) {
                continue;
            }
            chain.levels.push(Level::new(b, degree, explicit));
        }
        for g in generators {
            chain.add_generator(g.clone())?;
        }
        Ok(chain)
    }

    /// Extends the group by `g`; returns false (and changes nothing) if `g`
    /// was already a member.
    pub fn add_generator(&mut self, g: Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        let (residue, drop) = self.sift_from(g, 0);
        if residue.is_identity() {
            return Ok(false);
        }
        self.add_strong(drop, residue);
        self.saturate();
        Ok(true)
    }

    fn add_strong(&mut self, level: usize, g: Permutation) {
        if level == self.levels.len() {
            let b = g
                .first_moved_point()
                .expect("identity is never added as a strong generator");
            let explicit = self.levels.first().map_or(
                self.degree <= EXPLICIT_TRANSVERSAL_DEGREE,
                |l| l.inv_reps.is_some(),
            );
            self.levels.push(Level::new(b, self.degree, explicit));
        }
        let idx = self.strong.len();
        self.strong_inv.push(g.inverse());
        self.strong.push(g);
        for l in 0..=level {
            let lvl = &mut self.levels[l];
            lvl.gens.push(idx);
            let gi = (lvl.gens.len() - 1) as u32;
            for oi in 0..lvl.orbit.len() as u32 {
                lvl.pending.push_back((oi, gi));
            }
        }
    }

    /// Processes pending (orbit point, generator) pairs until every Schreier
    /// generator sifts to the identity.
    fn saturate(&mut self) {
        while let Some(l) = (0..self.levels.len())
            .rev()
            .find(|&l| !self.levels[l].pending.is_empty())
        {
            let (oi, gi) = self.levels[l].pending.pop_front().unwrap();
            let lvl = &self.levels[l];
            let p = lvl.orbit[oi as usize] as usize;
            let s_idx = lvl.gens[gi as usize];
            let q = self.strong[s_idx].apply(p);
            if lvl.position[q] == NONE {
                self.extend_orbit(l, p, q, s_idx);
                continue;
            }
            let schreier = self
                .rep(l, p)
                .then(&self.strong[s_idx]);
            let schreier = self.strip(l, q, &schreier);
            if schreier.is_identity() {
                continue;
            }
            let (residue, drop) = self.sift_from(schreier, l + 1);
            if !residue.is_identity() {
                self.add_strong(drop, residue);
            }
        }
    }

    fn extend_orbit(&mut self, l: usize, p: usize, q: usize, s_idx: usize) {
        let inv = self.levels[l]
            .inv_reps
            .as_ref()
            .map(|reps| self.strong_inv[s_idx].then(&reps[self.levels[l].position[p] as usize]));
        let lvl = &mut self.levels[l];
        let oi = lvl.orbit.len() as u32;
        lvl.orbit.push(q as u16);
        lvl.position[q] = oi;
        lvl.tree.push((s_idx as u32, p as u16));
        if let (Some(reps), Some(inv)) = (lvl.inv_reps.as_mut(), inv) {
            reps.push(inv);
        }
        for gi in 0..lvl.gens.len() as u32 {
            lvl.pending.push_back((oi, gi));
        }
    }

    /// Inverse of the coset representative mapping the level's base point to `x`.
    fn inv_rep(&self, l: usize, x: usize) -> Permutation {
        let lvl = &self.levels[l];
        let pos = lvl.position[x];
        debug_assert_ne!(pos, NONE);
        if let Some(reps) = &lvl.inv_reps {
            return reps[pos as usize].clone();
        }
        let mut acc = Permutation::identity(self.degree);
        let mut c = x;
        while c != lvl.base {
            let (s, pred) = lvl.tree[lvl.position[c] as usize];
            acc = acc.then(&self.strong_inv[s as usize]);
            c = pred as usize;
        }
        acc
    }

    /// `g` followed by the inverse coset representative for `x`.
    fn strip(&self, l: usize, x: usize, g: &Permutation) -> Permutation {
        let lvl = &self.levels[l];
        match &lvl.inv_reps {
            Some(reps) => g.then(&reps[lvl.position[x] as usize]),
            None => g.then(&self.inv_rep(l, x)),
        }
    }

    /// Coset representative mapping the level's base point to `x`.
    fn rep(&self, l: usize, x: usize) -> Permutation {
        self.inv_rep(l, x).inverse()
    }

    /// Strips `g` through levels `from..`; returns the residue and the level
    /// at which it dropped out (`depth()` if it passed every level).
    fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for j in from..self.levels.len() {
            let lvl = &self.levels[j];
            let x = g.apply(lvl.base);
            if lvl.position[x] == NONE {
                return (g, j);
            }
            if x != lvl.base {
                g = self.strip(j, x, &g);
            }
        }
        let depth = self.levels.len();
        (g, depth)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn basic_orbit(&self, level: usize) -> Vec<usize> {
        self.levels[level].orbit.iter().map(|&x| x as usize).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Group order as the product of basic orbit lengths.
    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
            .expect("group order overflows u128")
    }

    /// Strong generators fixing the first `level` base points.
    pub fn level_generators(&self, level: usize) -> Vec<Permutation> {
        match self.levels.get(level) {
            Some(lvl) => lvl.gens.iter().map(|&i| self.strong[i].clone()).collect(),
            None => Vec::new(),
        }
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    /// Membership test by sifting.
    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g.clone(), 0).0.is_identity()
    }

    /// The chain of the stabilizer of the first `level` base points.
    pub fn tail(&self, level: usize) -> StabilizerChain {
        let level = level.min(self.levels.len());
        let keep: Vec<usize> = self
            .levels
            .get(level)
            .map(|l| l.gens.clone())
            .unwrap_or_default();
        let mut remap = vec![NONE; self.strong.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new as u32;
        }
        let levels = self.levels[level..]
            .iter()
            .map(|l| {
                let mut l = l.clone();
                l.gens = l.gens.iter().map(|&i| remap[i] as usize).collect();
                l.tree = l
                    .tree
                    .iter()
                    .map(|&(s, p)| (if s == NONE { NONE } else { remap[s as usize] }, p))
                    .collect();
                l
            })
            .collect();
        StabilizerChain {
            degree: self.degree,
            strong: keep.iter().map(|&i| self.strong[i].clone()).collect(),
            strong_inv: keep.iter().map(|&i| self.strong_inv[i].clone()).collect(),
            levels,
        }
    }

    /// Re-checks that every Schreier generator of every level sifts to the
    /// identity through the levels below it.
    pub fn verify(&self) -> bool {
        for (l, lvl) in self.levels.iter().enumerate() {
            for &p in &lvl.orbit {
                for &s in &lvl.gens {
                    let q = self.strong[s].apply(p as usize);
                    if lvl.position[q] == NONE {
                        return false;
                    }
                    let h = self
                        .rep(l, p as usize)
                        .then(&self.strong[s])
                        .then(&self.inv_rep(l, q));
                    if !self.sift_from(h, l + 1).0.is_identity() {
                        return false;
                    }
                }
            }
            if l > 0 {
                let fixed = self.levels[..l].iter().map(|b| b.base);
                for &s in &lvl.gens {
                    if fixed.clone().any(|b| self.strong[s].apply(b) != b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Index of `g` in the mixed-radix enumeration (level 0 least
    /// significant), or `None` for non-members.
    pub fn index_of(&self, g: &Permutation) -> Option<u128> {
        let mut g = g.clone();
        let mut index = 0u128;
        let mut weight = 1u128;
        for (j, lvl) in self.levels.iter().enumerate() {
            let x = g.apply(lvl.base);
            let pos = lvl.position[x];
            if pos == NONE {
                return None;
            }
            index += weight * pos as u128;
            weight *= lvl.orbit.len() as u128;
            if x != lvl.base {
                g = self.strip(j, x, &g);
            }
        }
        g.is_identity().then_some(index)
    }

    /// Explicit coset representatives for every level.
    pub fn transversals(&self) -> Vec<Vec<Permutation>> {
        (0..self.levels.len())
            .map(|l| {
                self.levels[l]
                    .orbit
                    .iter()
                    .map(|&x| self.rep(l, x as usize))
                    .collect()
            })
            .collect()
    }

    /// Element with the given enumeration index.
    pub fn element_at(&self, mut index: u128) -> Permutation {
        let mut positions = Vec::with_capacity(self.levels.len());
        for lvl in &self.levels {
            let len = lvl.orbit.len() as u128;
            positions.push((index % len) as usize);
            index /= len;
        }
        let mut g = Permutation::identity(self.degree);
        for (l, &pos) in positions.iter().enumerate().rev() {
            let x = self.levels[l].orbit[pos] as usize;
            g = g.then(&self.rep(l, x));
        }
        g
    }

    /// All elements in enumeration-index order. Fails above `cap`.
    pub fn elements(&self, cap: u128) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > cap {
            return Err(Error::capacity(format!("element enumeration of a group of order {order}"), cap));
        }
        let transversals = self.transversals();
        let mut out = Vec::with_capacity(order as usize);
        let start = Permutation::identity(self.degree);
        fn walk(
            level: usize,
            prefix: &Permutation,
            transversals: &[Vec<Permutation>],
            out: &mut Vec<Permutation>,
        ) {
            if level == 0 {
                for u in &transversals[0] {
                    out.push(prefix.then(u));
                }
                return;
            }
            for u in &transversals[level] {
                walk(level - 1, &prefix.then(u), transversals, out);
            }
        }
        if transversals.is_empty() {
            out.push(start);
        } else {
            walk(transversals.len() - 1, &start, &transversals, &mut out);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn symmetric_group_of_degree_four() {
        let gens = [cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])];
        let chain = StabilizerChain::build(4, &gens, &[]).unwrap();
        assert_eq!(chain.order(), 24);
        assert!(chain.verify());
        let product: usize = chain.basic_orbit_lengths().iter().product();
        assert_eq!(product, 24);
    }

    #[test]
    fn prefix_controls_base() {
        let gens = [cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1]])];
        let chain = StabilizerChain::build(5, &gens, &[3]).unwrap();
        assert_eq!(chain.base()[0], 3);
        assert_eq!(chain.order(), 120);
        assert_eq!(chain.tail(1).order(), 24);
        assert!(chain.tail(1).verify());
    }

    #[test]
    fn enumeration_indices_round_trip() {
        let gens = [cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[2, 3, 4]])];
        let chain = StabilizerChain::build(5, &gens, &[]).unwrap();
        assert_eq!(chain.order(), 60);
        let elements = chain.elements(1000).unwrap();
        assert_eq!(elements.len(), 60);
        for (i, e) in elements.iter().enumerate() {
            assert_eq!(chain.index_of(e), Some(i as u128));
            assert_eq!(&chain.element_at(i as u128), e);
        }
        assert_eq!(chain.index_of(&cyc(5, &[&[0, 1]])), None);
    }

    #[test]
    fn word_transversals_agree_with_explicit_ones() {
        // Degree above the explicit-transversal threshold.
        let n = EXPLICIT_TRANSVERSAL_DEGREE + 3;
        let long: Vec<usize> = (0..n).collect();
        let gens = [
            Permutation::from_cycles(n, &[&long]).unwrap(),
            Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
        ];
        let chain = StabilizerChain::build(n, &gens[..1], &[]).unwrap();
        assert_eq!(chain.order(), n as u128);
        let small = StabilizerChain::build(6, &[cyc(6, &[&[0, 1, 2, 3, 4, 5]]), cyc(6, &[&[0, 1]])], &[])
            .unwrap();
        assert_eq!(small.order(), 720);
        assert!(!chain.contains(&gens[1]));
    }
}
