//! Brute-force automorphism groups of small groups given by tables.
//!
//! A generating sequence is chosen greedily (each step adds the element that
//! enlarges the generated subgroup most). Automorphisms are then found by
//! backtracking over images of the generators: candidates must have the same
//! element order, and after each choice the partial map is propagated along
//! the Cayley graph of the subgroup generated so far, rejecting any clash or
//! collision. A map that survives propagation on the whole group is a
//! homomorphism (every Cayley-graph edge is respected) and is injective, so
//! it is an automorphism.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::structure::table::{count, SmallGroupTable};

/// Largest group order for automorphism searches.
pub const MAX_AUT_ORDER: usize = 512;

/// Default bound on backtracking nodes.
pub const DEFAULT_SEARCH_BUDGET: u64 = 20_000_000;

/// Greedy generating sequence: ties go to the least element index.
pub fn greedy_generating_sequence(t: &SmallGroupTable) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut size = 1;
    while size < t.order() {
        let mut best = (size, usize::MAX);
        for x in 0..t.order() {
            let mut trial = gens.clone();
            trial.push(x);
            let s = count(&t.generate(&trial));
            if s > best.0 {
                best = (s, x);
            }
        }
        gens.push(best.1);
        size = best.0;
    }
    gens
}

struct Search<'a> {
    t: &'a SmallGroupTable,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    budget: u64,
    nodes: &'a AtomicU64,
}

impl Search<'_> {
    /// Propagates images of `gens[..=level]` from the identity; returns the
    /// full partial map (NONE outside the generated subgroup) if consistent.
    fn propagate(&self, images: &[usize]) -> Option<Vec<u32>> {
        const NONE: u32 = u32::MAX;
        let t = self.t;
        let n = t.order();
        let mut map = vec![NONE; n];
        let mut used = vec![false; n];
        map[t.identity()] = t.identity() as u32;
        used[t.identity()] = true;
        let mut list = vec![t.identity()];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            let fx = map[x] as usize;
            for (k, &img) in images.iter().enumerate() {
                let y = t.mul(x, self.gens[k]);
                let fy = t.mul(fx, img);
                if map[y] == NONE {
                    if used[fy] {
                        return None;
                    }
                    map[y] = fy as u32;
                    used[fy] = true;
                    list.push(y);
                } else if map[y] as usize != fy {
                    return None;
                }
            }
            i += 1;
        }
        Some(map)
    }

    fn extend(&self, images: &mut Vec<usize>, out: &mut Vec<Vec<u32>>) -> Result<()> {
        if images.len() == self.gens.len() {
            let map = self.propagate(images).expect("checked at the previous level");
            out.push(map);
            return Ok(());
        }
        let level = images.len();
        for &c in &self.candidates[level] {
            if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
                return Err(Error::capacity("automorphism search nodes", self.budget));
            }
            images.push(c);
            if self.propagate(images).is_some() {
                self.extend(images, out)?;
            }
            images.pop();
        }
        Ok(())
    }
}

/// The automorphism group as a sorted list of element maps.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    pub generators_used: Vec<usize>,
    /// Each map sends element `x` to `map[x]`; sorted lexicographically.
    pub maps: Vec<Vec<u32>>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.maps.len()
    }

    /// Orbits of the automorphism group on elements, each sorted, ordered by
    /// least element.
    pub fn orbits(&self, n: usize) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if label[x] != usize::MAX {
                continue;
            }
            let mut orbit: Vec<usize> = self.maps.iter().map(|m| m[x] as usize).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                label[y] = out.len();
            }
            out.push(orbit);
        }
        out
    }
}

/// Computes Aut(T) by exhaustive search.
pub fn automorphism_group(
    t: &SmallGroupTable,
    budget: u64,
    exec: Execution,
) -> Result<AutomorphismGroup> {
    if t.order() > MAX_AUT_ORDER {
        return Err(Error::capacity("automorphism search group order", MAX_AUT_ORDER as u128));
    }
    let gens = greedy_generating_sequence(t);
    if gens.is_empty() {
        return Ok(AutomorphismGroup {
            generators_used: gens,
            maps: vec![vec![t.identity() as u32]],
        });
    }
    let orders: Vec<u64> = (0..t.order()).map(|x| t.element_order(x)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..t.order()).filter(|&x| orders[x] == orders[g]).collect())
        .collect();
    let nodes = AtomicU64::new(0);
    let search = Search {
        t,
        gens: gens.clone(),
        candidates,
        budget,
        nodes: &nodes,
    };
    let firsts = search.candidates[0].clone();
    let results = exec.map(firsts, |c| -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        let mut images = vec![c];
        if search.propagate(&images).is_some() {
            search.extend(&mut images, &mut out)?;
        }
        Ok(out)
    });
    let mut maps = Vec::new();
    for r in results {
        maps.extend(r?);
    }
    maps.sort();
    Ok(AutomorphismGroup {
        generators_used: gens,
        maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::table::small::*;

    fn aut_order(t: &SmallGroupTable) -> usize {
        automorphism_group(t, DEFAULT_SEARCH_BUDGET, Execution::Sequential)
            .unwrap()
            .order()
    }

    #[test]
    fn known_automorphism_group_orders() {
        assert_eq!(aut_order(&cyclic(9)), 6);
        assert_eq!(aut_order(&cyclic(8)), 4);
        assert_eq!(aut_order(&abelian(&[2, 2, 2])), 168);
        assert_eq!(aut_order(&quaternion()), 24);
        assert_eq!(aut_order(&heisenberg(3)), 432);
        assert_eq!(aut_order(&cyclic(1)), 1);
    }

    #[test]
    fn maps_are_automorphisms_and_closed() {
        let t = quaternion();
        let aut = automorphism_group(&t, DEFAULT_SEARCH_BUDGET, Execution::Parallel).unwrap();
        for m in &aut.maps {
            for a in 0..8 {
                for b in 0..8 {
                    assert_eq!(m[t.mul(a, b)] as usize, t.mul(m[a] as usize, m[b] as usize));
                }
            }
        }
        for a in &aut.maps {
            for b in &aut.maps {
                let ab: Vec<u32> = a.iter().map(|&x| b[x as usize]).collect();
                assert!(aut.maps.binary_search(&ab).is_ok());
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = automorphism_group(&abelian(&[2, 2, 2, 2, 2, 2, 2, 2, 2]), 10_000, Execution::Sequential)
            .unwrap_err();
        assert!(err.is_capacity());
    }
}
