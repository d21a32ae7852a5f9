//! Brute-force reference computations, independent of the stabilizer chain
//! and of the union-find block algorithm. Used to cross-check fast paths.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default degree cap for subset-based block searches.
pub const PARTITION_ORACLE_DEGREE: usize = 24;

/// Number of orbits on ordered pairs, by flood fill over the `n²` pairs.
pub fn orbits_on_pairs(degree: usize, gens: &[Permutation]) -> usize {
    let n = degree;
    let mut seen = vec![false; n * n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..n * n {
        if seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(pair) = queue.pop_front() {
            let (x, y) = (pair / n, pair % n);
            for g in gens {
                let img = g.apply(x) * n + g.apply(y);
                if !seen[img] {
                    seen[img] = true;
                    queue.push_back(img);
                }
            }
        }
    }
    count
}

/// All elements of `<gens>` by closing the identity under right
/// multiplication by generators. Fails above `cap`.
pub fn enumerate_elements(
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Result<HashSet<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::capacity("brute-force element enumeration", cap as u128));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Whether the images of `set` under `<gens>` tile the domain.
pub fn is_block(degree: usize, gens: &[Permutation], set: &[usize]) -> bool {
    let mut images: HashSet<Vec<usize>> = HashSet::new();
    let mut start = set.to_vec();
    start.sort_unstable();
    images.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(b) = queue.pop_front() {
        for g in gens {
            let mut img: Vec<usize> = b.iter().map(|&x| g.apply(x)).collect();
            img.sort_unstable();
            if images.insert(img.clone()) {
                if images.len() * set.len() > degree {
                    return false;
                }
                queue.push_back(img);
            }
        }
    }
    let mut covered = vec![false; degree];
    for b in &images {
        for &x in b {
            if std::mem::replace(&mut covered[x], true) {
                return false;
            }
        }
    }
    covered.iter().all(|&c| c)
}

/// Smallest block containing both seed points, by trying every subset of
/// admissible size that contains them. Degree must be at most `max_degree`.
pub fn smallest_block_containing(
    degree: usize,
    gens: &[Permutation],
    seed: (usize, usize),
    max_degree: usize,
) -> Result<Vec<usize>> {
    if degree > max_degree {
        return Err(Error::capacity("brute-force partition oracle degree", max_degree as u128));
    }
    let (a, b) = seed;
    let rest: Vec<usize> = (0..degree).filter(|&x| x != a && x != b).collect();
    for size in 2..=degree {
        if !degree.is_multiple_of(size) {
            continue;
        }
        let mut found = None;
        for_each_combination(rest.len(), size - 2, |idx| {
            let mut set = vec![a, b];
            set.extend(idx.iter().map(|&i| rest[i]));
            if is_block(degree, gens, &set) {
                set.sort_unstable();
                found = Some(set);
                return true;
            }
            false
        });
        if let Some(set) = found {
            return Ok(set);
        }
    }
    unreachable!("the whole domain is always a block")
}

/// Calls `f` on each `k`-subset of `0..n` (as sorted indices) until it
/// returns true.
fn for_each_combination<F: FnMut(&[usize]) -> bool>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_are_complete() {
        let mut count = 0;
        for_each_combination(6, 3, |_| {
            count += 1;
            false
        });
        assert_eq!(count, 20);
        let mut empty = 0;
        for_each_combination(4, 0, |_| {
            empty += 1;
            false
        });
        assert_eq!(empty, 1);
    }

    #[test]
    fn square_pairs_and_blocks() {
        let r = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let s = Permutation::from_cycles(4, &[&[1, 3]]).unwrap();
        let gens = [r.clone(), s];
        assert_eq!(orbits_on_pairs(4, &gens), 3);
        assert_eq!(enumerate_elements(4, &gens, 100).unwrap().len(), 8);
        assert_eq!(smallest_block_containing(4, &[r], (0, 2), 24).unwrap(), vec![0, 2]);
        assert!(!is_block(4, &gens, &[0, 1]));
    }
}
