use std::collections::VecDeque;
use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::{Permutation, StabilizerChain};

/// A permutation group given by generators, with a stabilizer chain built on
/// first use.
///
/// The chain is built once behind a `OnceLock`; after that every query is
/// read-only, so a group can be shared across threads.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl PermGroup {
    /// Group generated by `generators`. Identity generators are dropped; an
    /// empty list gives the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut gens: Vec<Permutation> = Vec::with_capacity(generators.len());
        for g in generators {
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(PermGroup {
            degree,
            generators: gens,
            chain: OnceLock::new(),
        })
    }

    /// Wraps generators together with an already built chain for them.
    pub(crate) fn with_chain(generators: Vec<Permutation>, chain: StabilizerChain) -> Self {
        let degree = chain.degree();
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        let lock = OnceLock::new();
        let _ = lock.set(chain);
        PermGroup {
            degree,
            generators,
            chain: lock,
        }
    }

    /// Group whose generators are the strong generators of `chain`.
    pub fn from_chain(chain: StabilizerChain) -> Self {
        let gens = chain.strong_generators().to_vec();
        Self::with_chain(gens, chain)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("positive degree")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1]]).unwrap());
            let long: Vec<usize> = (0..n).collect();
            gens.push(Permutation::from_cycles(n, &[&long]).unwrap());
        }
        Self::new(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n)
            .map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]).unwrap())
            .collect();
        Self::new(n, gens).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let long: Vec<usize> = (0..n).collect();
        Self::new(n, vec![Permutation::from_cycles(n, &[&long]).unwrap()]).unwrap()
    }

    /// Dihedral group of order `2n` on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let reflection = Permutation::new((0..n).map(|i| (n - i) % n).collect()).unwrap();
        let mut g = Self::cyclic(n).generators;
        g.push(reflection);
        Self::new(n, g).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain.get_or_init(|| {
            StabilizerChain::build(self.degree, &self.generators, &[])
                .expect("generators were validated on construction")
        })
    }

    /// Chain with a prescribed base prefix (not cached).
    pub fn chain_with_base(&self, prefix: &[usize]) -> Result<StabilizerChain> {
        StabilizerChain::build(self.degree, &self.generators, prefix)
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.contains_group(other)
    }

    fn check_point(&self, x: usize) -> Result<()> {
        if x >= self.degree {
            Err(Error::PointOutOfRange {
                point: x,
                degree: self.degree,
            })
        } else {
            Ok(())
        }
    }

    /// Orbit of `x` in breadth-first order.
    pub fn orbit(&self, x: usize) -> Result<Vec<usize>> {
        self.check_point(x)?;
        Ok(orbit_of(self.degree, &self.generators, x))
    }

    /// All orbits, each in breadth-first order, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let orb = orbit_of(self.degree, &self.generators, x);
                for &y in &orb {
                    seen[y] = true;
                }
                out.push(orb);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        orbit_of(self.degree, &self.generators, 0).len() == self.degree
    }

    /// Setwise-stable set check: does every generator map `set` onto itself.
    pub fn stabilizes_set(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.degree];
        for &x in set {
            member[x] = true;
        }
        self.generators
            .iter()
            .all(|g| set.iter().all(|&x| member[g.apply(x)]))
    }

    /// The stabilizer of `x`.
    pub fn point_stabilizer(&self, x: usize) -> Result<PermGroup> {
        self.check_point(x)?;
        self.pointwise_stabilizer(&[x])
    }

    /// The subgroup fixing every point of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        for &x in points {
            self.check_point(x)?;
        }
        if let Some(cached) = self.chain.get() {
            let base = cached.base();
            if base.len() >= points.len() && base[..points.len()].iter().all(|b| points.contains(b)) {
                return Ok(PermGroup::from_chain(cached.tail(points.len())));
            }
        }
        let chain = self.chain_with_base(points)?;
        let depth = chain
            .base()
            .iter()
            .take_while(|b| points.contains(b))
            .count();
        Ok(PermGroup::from_chain(chain.tail(depth)))
    }

    /// Orbits of the stabilizer of point 0, ordered by least point (so the
    /// first suborbit is `{0}`).
    pub fn suborbits(&self) -> Result<Vec<Vec<usize>>> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let mut orbs = self.point_stabilizer(0)?.orbits();
        for o in &mut orbs {
            o.sort_unstable();
        }
        Ok(orbs)
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.suborbits()?.len())
    }

    /// Suborbit sizes in increasing order.
    pub fn subdegrees(&self) -> Result<Vec<usize>> {
        let mut s: Vec<usize> = self.suborbits()?.iter().map(Vec::len).collect();
        s.sort_unstable();
        Ok(s)
    }

    /// Elements in chain enumeration order. Fails above `cap`.
    pub fn elements(&self, cap: u128) -> Result<Vec<Permutation>> {
        self.chain().elements(cap)
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let order = self.order();
        let idx = if order <= u64::MAX as u128 {
            rng.gen_range(0..order as u64) as u128
        } else {
            rng.gen_range(0..order)
        };
        self.chain().element_at(idx)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Whether `self` is normalized by every generator of `by`.
    pub fn is_normalized_by(&self, by: &PermGroup) -> bool {
        by.generators.iter().all(|g| {
            self.generators
                .iter()
                .all(|h| self.contains(&h.conjugate_by(g)))
        })
    }

    /// Group generated by the generators of both.
    pub fn join(&self, other: &PermGroup) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        PermGroup::new(self.degree, gens)
    }

    /// Whether only the identity fixes a point.
    pub fn is_semiregular(&self) -> bool {
        self.orbits().iter().all(|orb| {
            self.point_stabilizer(orb[0])
                .map(|s| s.order() == 1)
                .unwrap_or(false)
        })
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == self.degree as u128
    }

    /// The action on an invariant set of points, relabelled by position.
    pub fn restrict_to(&self, points: &[usize]) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.restrict_to(points))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(points.len(), gens)
    }

    /// `g^-1 H g`.
    pub fn conjugate(&self, g: &Permutation) -> PermGroup {
        let gens = self.generators.iter().map(|h| h.conjugate_by(g)).collect();
        PermGroup::new(self.degree, gens).expect("degrees agree")
    }
}

/// Breadth-first orbit of `x` under `gens`.
pub fn orbit_of(degree: usize, gens: &[Permutation], x: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[x] = true;
    let mut out = vec![x];
    let mut queue = VecDeque::from([x]);
    while let Some(y) = queue.pop_front() {
        for g in gens {
            let z = g.apply(y);
            if !seen[z] {
                seen[z] = true;
                out.push(z);
                queue.push_back(z);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(PermGroup::trivial(5).orbit(3).unwrap(), vec![3]);
        assert_eq!(PermGroup::cyclic(4).orbit(0).unwrap(), vec![0, 1, 2, 3]);
        let g = PermGroup::new(5, vec![cyc(5, &[&[0, 1]]), cyc(5, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(g.orbit(4).unwrap(), vec![4]);
        assert!(g.orbit(5).is_err());
    }

    #[test]
    fn stabilizers_and_rank() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.point_stabilizer(0).unwrap().order(), 6);
        assert_eq!(s4.rank().unwrap(), 2);
        assert_eq!(s4.subdegrees().unwrap(), vec![1, 3]);
        let c4 = PermGroup::cyclic(4);
        assert_eq!(c4.point_stabilizer(0).unwrap().order(), 1);
        assert_eq!(c4.rank().unwrap(), 4);
        let d8 = PermGroup::dihedral(4);
        assert_eq!(d8.order(), 8);
        assert_eq!(d8.subdegrees().unwrap(), vec![1, 1, 2]);
    }

    #[test]
    fn intransitive_rank_is_an_error() {
        let g = PermGroup::new(4, vec![cyc(4, &[&[0, 1]])]).unwrap();
        assert_eq!(g.rank(), Err(Error::NotTransitive));
    }

    #[test]
    fn pointwise_stabilizer_of_two_points() {
        let s5 = PermGroup::symmetric(5);
        let h = s5.pointwise_stabilizer(&[2, 4]).unwrap();
        assert_eq!(h.order(), 6);
        assert!(h.generators().iter().all(|g| g.apply(2) == 2 && g.apply(4) == 4));
    }

    #[test]
    fn semiregularity() {
        assert!(PermGroup::cyclic(4).is_semiregular());
        assert!(!PermGroup::symmetric(3).is_semiregular());
        let k = PermGroup::new(6, vec![cyc(6, &[&[0, 1], &[2, 3], &[4, 5]])]).unwrap();
        assert!(k.is_semiregular());
    }
}
