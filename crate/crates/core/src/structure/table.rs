use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Largest order accepted for multiplication tables.
pub const MAX_TABLE_ORDER: usize = 2000;

/// Orders up to which associativity is checked on every triple.
const FULL_ASSOCIATIVITY_ORDER: usize = 200;

/// A finite group given by its multiplication table. Element 0 is not
/// assumed to be the identity; `identity()` reports it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallGroupTable {
    n: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
    labels: Vec<String>,
}

impl SmallGroupTable {
    /// Validates a table given row-major with 0-indexed entries.
    pub fn new(n: usize, table: Vec<usize>) -> Result<Self> {
        if n == 0 || n > MAX_TABLE_ORDER {
            return Err(Error::capacity("group table order", MAX_TABLE_ORDER as u128));
        }
        if table.len() != n * n {
            return Err(Error::InvalidArgument(format!("table needs {} entries", n * n)));
        }
        for row in 0..n {
            let mut seen = vec![false; n];
            for col in 0..n {
                let v = table[row * n + col];
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidArgument(format!("row {} is not a permutation", row + 1)));
                }
            }
        }
        for col in 0..n {
            let mut seen = vec![false; n];
            for row in 0..n {
                if std::mem::replace(&mut seen[table[row * n + col]], true) {
                    return Err(Error::InvalidArgument(format!("column {} is not a permutation", col + 1)));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or_else(|| Error::InvalidArgument("no identity element".into()))?;
        let table: Vec<u32> = table.into_iter().map(|v| v as u32).collect();
        let mut inverse = vec![0u32; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| table[x * n + y] as usize == identity)
                .expect("Latin square rows contain the identity") as u32;
        }
        let t = SmallGroupTable {
            n,
            table,
            identity,
            inverse,
            labels: (1..=n).map(|i| i.to_string()).collect(),
        };
        t.check_associativity()?;
        Ok(t)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.n;
        let bad = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        if n <= FULL_ASSOCIATIVITY_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(Error::InvalidArgument(format!(
                                "not associative at ({}, {}, {})",
                                a + 1,
                                b + 1,
                                c + 1
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..1000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(a, b, c) {
                    return Err(Error::InvalidArgument("not associative".into()));
                }
            }
        }
        Ok(())
    }

    /// Builds a table from a product closure on labelled elements.
    pub fn from_elements<T: Clone + Eq + std::hash::Hash>(
        elements: &[T],
        mul: impl Fn(&T, &T) -> T,
    ) -> Result<Self> {
        let n = elements.len();
        if n > MAX_TABLE_ORDER {
            return Err(Error::capacity("group table order", MAX_TABLE_ORDER as u128));
        }
        let index: std::collections::HashMap<&T, usize> =
            elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut table = Vec::with_capacity(n * n);
        for a in elements {
            for b in elements {
                let c = mul(a, b);
                let idx = *index
                    .get(&c)
                    .ok_or_else(|| Error::InvalidArgument("elements are not closed under the product".into()))?;
                table.push(idx);
            }
        }
        Self::new(n, table)
    }

    /// Table of a permutation group, elements in chain enumeration order.
    pub fn from_perm_group(group: &PermGroup) -> Result<Self> {
        let elements = group.elements(MAX_TABLE_ORDER as u128)?;
        let mut t = Self::from_elements(&elements, |a, b| a.then(b))?;
        t.labels = elements.iter().map(Permutation::to_cycle_string).collect();
        Ok(t)
    }

    /// Parses `order n` followed by `n` rows of `n` 1-indexed entries.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `order n` header".into(),
        })?;
        let n: usize = header
            .strip_prefix("order")
            .and_then(|s| s.trim().parse().ok())
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Parse {
                line: hline,
                message: format!("expected `order n`, found `{header}`"),
            })?;
        if n > MAX_TABLE_ORDER {
            return Err(Error::capacity("group table order", MAX_TABLE_ORDER as u128));
        }
        let mut table = Vec::with_capacity(n * n);
        let mut rows = 0;
        for (line, body) in lines {
            let row = body
                .split_whitespace()
                .map(|t| t.parse::<usize>().ok().filter(|&v| v >= 1 && v <= n).map(|v| v - 1))
                .collect::<Option<Vec<_>>>()
                .filter(|r| r.len() == n)
                .ok_or_else(|| Error::Parse {
                    line,
                    message: format!("expected {n} entries between 1 and {n}"),
                })?;
            table.extend(row);
            rows += 1;
        }
        if rows != n {
            return Err(Error::Parse {
                line: hline,
                message: format!("expected {n} rows, found {rows}"),
            });
        }
        Self::new(n, table)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("order {}\n", self.n);
        for a in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|b| (self.mul(a, b) + 1).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut acc = self.identity;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.n)
            .map(|a| self.element_order(a))
            .fold(1, crate::numtheory::lcm)
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// `b⁻¹ a b`.
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.n];
        member[self.identity] = true;
        let mut list = vec![self.identity];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        member
    }

    /// Membership mask of the normal closure of `elems`.
    pub fn normal_closure(&self, elems: &[usize]) -> Vec<bool> {
        let mut gens: Vec<usize> = elems.to_vec();
        loop {
            let member = self.generate(&gens);
            let missing = (0..self.n).find_map(|g| {
                gens.iter()
                    .map(|&h| self.conjugate(h, g))
                    .find(|&c| !member[c])
            });
            match missing {
                Some(c) => gens.push(c),
                None => return member,
            }
        }
    }

    pub fn center(&self) -> Vec<bool> {
        (0..self.n)
            .map(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    pub fn derived_subgroup(&self) -> Vec<bool> {
        let mut comms: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                let c = self.commutator(a, b);
                if !std::mem::replace(&mut seen[c], true) {
                    comms.push(c);
                }
            }
        }
        self.generate(&comms)
    }

    /// Centralizer of a subset.
    pub fn centralizer(&self, of: &[bool]) -> Vec<bool> {
        (0..self.n)
            .map(|a| (0..self.n).filter(|&b| of[b]).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    /// Relabels elements by `perm` (element `x` becomes `perm[x]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut table = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        Self::new(n, table)
    }

    /// Right regular representation as permutations of the elements.
    pub fn regular_permutation(&self, g: usize) -> Permutation {
        Permutation::new((0..self.n).map(|x| self.mul(x, g)).collect()).expect("Latin square row")
    }
}

pub fn count(mask: &[bool]) -> usize {
    mask.iter().filter(|&&b| b).count()
}

pub fn members(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}

/// Common constructions used in tests, examples and the Aut corpus.
pub mod small {
    use super::*;

    pub fn cyclic(n: usize) -> SmallGroupTable {
        let els: Vec<usize> = (0..n).collect();
        SmallGroupTable::from_elements(&els, |a, b| (a + b) % n).unwrap()
    }

    /// Direct product of cyclic groups with the given orders.
    pub fn abelian(orders: &[usize]) -> SmallGroupTable {
        let total: usize = orders.iter().product();
        let decode = |mut x: usize| -> Vec<usize> {
            orders
                .iter()
                .map(|&m| {
                    let d = x % m;
                    x /= m;
                    d
                })
                .collect()
        };
        let encode = |v: &[usize]| -> usize { v.iter().zip(orders).rev().fold(0, |acc, (&d, &m)| acc * m + d) };
        let els: Vec<usize> = (0..total).collect();
        SmallGroupTable::from_elements(&els, |&a, &b| {
            let (va, vb) = (decode(a), decode(b));
            let sum: Vec<usize> = va.iter().zip(&vb).zip(orders).map(|((x, y), m)| (x + y) % m).collect();
            encode(&sum)
        })
        .unwrap()
    }

    pub fn quaternion() -> SmallGroupTable {
        // Unit quaternions ±1, ±i, ±j, ±k as (sign, unit) with unit 0..4 = 1,i,j,k.
        let els: Vec<(i8, u8)> = [1i8, -1].iter().flat_map(|&s| (0..4).map(move |u| (s, u))).collect();
        let unit_mul = |a: u8, b: u8| -> (i8, u8) {
            match (a, b) {
                (0, x) | (x, 0) => (1, x),
                (x, y) if x == y => (-1, 0),
                (1, 2) => (1, 3),
                (2, 3) => (1, 1),
                (3, 1) => (1, 2),
                (2, 1) => (-1, 3),
                (3, 2) => (-1, 1),
                (1, 3) => (-1, 2),
                _ => unreachable!(),
            }
        };
        SmallGroupTable::from_elements(&els, |&(sa, ua), &(sb, ub)| {
            let (s, u) = unit_mul(ua, ub);
            (sa * sb * s, u)
        })
        .unwrap()
    }

    pub fn from_perm_group(g: &PermGroup) -> SmallGroupTable {
        SmallGroupTable::from_perm_group(g).unwrap()
    }

    /// Heisenberg group of triples over Z_p, `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
    pub fn heisenberg(p: usize) -> SmallGroupTable {
        let els: Vec<(usize, usize, usize)> = (0..p * p * p).map(|x| (x % p, x / p % p, x / (p * p))).collect();
        SmallGroupTable::from_elements(&els, |&(a, b, c), &(x, y, z)| {
            ((a + x) % p, (b + y) % p, (c + z + a * y) % p)
        })
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::small::*;
    use super::*;

    #[test]
    fn basic_tables() {
        let q8 = quaternion();
        assert_eq!(q8.order(), 8);
        assert!(!q8.is_abelian());
        assert_eq!(count(&q8.center()), 2);
        assert_eq!(q8.exponent(), 4);
        let z = abelian(&[2, 2, 2]);
        assert!(z.is_abelian());
        assert_eq!(z.exponent(), 2);
        let h = heisenberg(3);
        assert_eq!(h.exponent(), 3);
        assert_eq!(count(&h.derived_subgroup()), 3);
        let a4 = from_perm_group(&PermGroup::alternating(4));
        assert_eq!(count(&a4.derived_subgroup()), 4);
    }

    #[test]
    fn text_round_trip_and_errors() {
        let t = cyclic(5);
        assert_eq!(SmallGroupTable::parse(&t.to_text()).unwrap(), t);
        assert!(SmallGroupTable::parse("order 2\n1 2\n1 2\n").is_err());
        assert!(matches!(
            SmallGroupTable::parse("order 2\n1 2\n2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        // Latin square that is not a group (no associativity).
        let latin = vec![0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0];
        assert!(SmallGroupTable::new(5, latin).is_err());
    }
}
