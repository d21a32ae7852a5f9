use std::fmt;

use crate::error::{Error, Result};

/// Largest supported degree. Points are stored as `u16`.
pub const MAX_DEGREE: usize = u16::MAX as usize;

/// A bijection of `{0, .., n-1}` stored as its image sequence.
///
/// Products are read left to right: `a.then(&b)` maps `x` to `b(a(x))`,
/// i.e. `x^(ab) = (x^a)^b`. Every function in the crate uses this convention.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    /// Builds a permutation from its 0-indexed image list, checking bijectivity.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        if n > MAX_DEGREE {
            return Err(Error::capacity("permutation degree", MAX_DEGREE as u128));
        }
        let mut seen = vec![false; n];
        for (x, &y) in images.iter().enumerate() {
            if y >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {y} of point {x} is out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[y], true) {
                return Err(Error::InvalidPermutation(format!("point {y} is hit twice")));
            }
        }
        Ok(Self {
            images: images.into_iter().map(|y| y as u16).collect(),
        })
    }

    pub fn identity(degree: usize) -> Self {
        assert!(degree > 0 && degree <= MAX_DEGREE);
        Self {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from disjoint 0-indexed cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if std::mem::replace(&mut touched[x], true) {
                    return Err(Error::InvalidPermutation(format!("repeated point {x}")));
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::new(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `x`. Panics when `x` is out of range.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn image_vec(&self) -> Vec<usize> {
        self.images.iter().map(|&y| y as usize).collect()
    }

    /// `self` followed by `other`; panics on degree mismatch.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Permutation {
            images: self.images.iter().map(|&y| other.images[y as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u16;
        }
        Permutation { images: inv.into() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u16; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            out[g.images[x] as usize] = g.images[y as usize];
        }
        Permutation { images: out.into() }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(x, &y)| other.images[y as usize] == self.images[other.images[x] as usize])
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_lcm(acc, c.len() as u64))
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(x, &y)| *x != y as usize)
            .map(|(x, _)| x)
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(x, &y)| *x == y as usize)
            .count()
    }

    /// 1-indexed cycle notation, `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            s.push_str(&parts.join(","));
            s.push(')');
        }
        s
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images = self.images.to_vec();
        images.extend(self.degree() as u16..degree as u16);
        Permutation { images: images.into() }
    }

    /// Restriction to a set of points that the permutation maps onto itself,
    /// relabelled by position in `points`.
    pub fn restrict_to(&self, points: &[usize]) -> Result<Permutation> {
        let mut position = vec![usize::MAX; self.degree()];
        for (i, &p) in points.iter().enumerate() {
            position[p] = i;
        }
        let images = points
            .iter()
            .map(|&p| {
                let q = position[self.apply(p)];
                if q == usize::MAX {
                    Err(Error::InvalidArgument("point set is not invariant".into()))
                } else {
                    Ok(q)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

/// Checked product `a` then `b` (`x ↦ b(a(x))`).
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            expected: a.degree(),
            found: b.degree(),
        });
    }
    Ok(a.then(b))
}

fn num_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn num_lcm(a: u64, b: u64) -> u64 {
    a / num_gcd(a, b) * b
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn involution_squares_to_identity() {
        let t = cyc(2, &[&[0, 1]]);
        assert!(compose(&t, &t).unwrap().is_identity());
    }

    #[test]
    fn three_cycle_squared() {
        let c = cyc(3, &[&[0, 1, 2]]);
        assert_eq!(compose(&c, &c).unwrap(), cyc(3, &[&[0, 2, 1]]));
    }

    #[test]
    fn inverse_law_on_random_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let mut v: Vec<usize> = (0..20).collect();
            v.shuffle(&mut rng);
            let a = Permutation::new(v).unwrap();
            assert!(compose(&a, &a.inverse()).unwrap().is_identity());
            assert!(a.inverse().then(&a).is_identity());
        }
    }

    #[test]
    fn product_is_left_to_right() {
        // (0 1) then (1 2): 0 -> 1 -> 2.
        let a = cyc(3, &[&[0, 1]]);
        let b = cyc(3, &[&[1, 2]]);
        assert_eq!(a.then(&b).apply(0), 2);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1, 1]]).is_err());
        assert!(compose(&Permutation::identity(2), &Permutation::identity(3)).is_err());
    }

    #[test]
    fn conjugation_and_order() {
        let a = cyc(5, &[&[0, 1, 2]]);
        let g = cyc(5, &[&[2, 4]]);
        let c = a.conjugate_by(&g);
        assert_eq!(c, g.inverse().then(&a).then(&g));
        assert_eq!(cyc(6, &[&[0, 1], &[2, 3, 4]]).order(), 6);
        assert_eq!(a.pow(3), Permutation::identity(5));
        assert_eq!(cyc(4, &[&[0, 2], &[1, 3]]).to_cycle_string(), "(1,3)(2,4)");
    }
}
