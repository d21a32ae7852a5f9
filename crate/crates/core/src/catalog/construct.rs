//! The two exceptional catalog groups, built from their defining geometry:
//!
//! - `2.M12` on 24 points: the monomial automorphism group of the extended
//!   ternary Golay code acting on the vectors `±e_i`. Point `2i` is `e_i`
//!   and point `2i + 1` is `−e_i`.
//! - `3.S6` on 18 points: the stabilizer in `ΓL_3(4)` of the 18 nonzero
//!   vectors spanning the hyperoval `{⟨(1,t,t²)⟩} ∪ {⟨(0,0,1)⟩, ⟨(0,1,0)⟩}`
//!   of `PG(2,4)`, acting on those vectors in increasing index order.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linear::field::Field;
use crate::linear::space::{linear_group_on_vectors, LinearKind, VectorSpace};
use crate::perm::{filter_subgroup, PermGroup, Permutation, StabilizerChain};

const GOLAY_REDUNDANCY: [[u8; 6]; 6] = [
    [0, 1, 1, 1, 1, 1],
    [1, 0, 1, 2, 2, 1],
    [1, 1, 0, 1, 2, 2],
    [1, 2, 1, 0, 1, 2],
    [1, 2, 2, 1, 0, 1],
    [1, 1, 2, 2, 1, 0],
];

type Word = [u8; 12];

fn golay_rows() -> Vec<Word> {
    (0..6)
        .map(|i| {
            let mut w = [0u8; 12];
            w[i] = 1;
            w[6..].copy_from_slice(&GOLAY_REDUNDANCY[i]);
            w
        })
        .collect()
}

/// All 729 codewords.
fn golay_code() -> Vec<Word> {
    let rows = golay_rows();
    (0..729usize)
        .map(|mut x| {
            let mut w = [0u8; 12];
            for row in &rows {
                let c = (x % 3) as u8;
                x /= 3;
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi = (*wi + c * ri) % 3;
                }
            }
            w
        })
        .collect()
}

fn weight(w: &Word) -> usize {
    w.iter().filter(|&&c| c != 0).count()
}

fn support_mask(w: &Word) -> u16 {
    w.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .fold(0, |m, (i, _)| m | 1 << i)
}

/// The 132 supports of weight 6 codewords, after checking the weight
/// distribution `1, 264, 440, 24` of the extended ternary Golay code.
fn golay_hexads(code: &[Word]) -> Result<HashSet<u16>> {
    let mut dist = [0usize; 13];
    for w in code {
        dist[weight(w)] += 1;
    }
    if dist[0] != 1 || dist[6] != 264 || dist[9] != 440 || dist[12] != 24 {
        return Err(Error::InvalidArgument(format!("unexpected Golay weight distribution {dist:?}")));
    }
    let hexads: HashSet<u16> = code.iter().filter(|w| weight(w) == 6).map(support_mask).collect();
    if hexads.len() != 132 {
        return Err(Error::InvalidArgument("expected 132 hexads".into()));
    }
    Ok(hexads)
}

fn preserves(sigma: &[usize], hexads: &HashSet<u16>) -> bool {
    hexads.iter().all(|&h| {
        let image = (0..12).filter(|i| h >> i & 1 == 1).fold(0u16, |m, i| m | 1 << sigma[i]);
        hexads.contains(&image)
    })
}

/// The unique hexad automorphism sending `0..5` to `tuple`, found by trying
/// every arrangement of the remaining seven images.
fn automorphism_from_tuple(tuple: &[usize; 5], hexads: &HashSet<u16>) -> Option<Vec<usize>> {
    let rest: Vec<usize> = (0..12).filter(|x| !tuple.contains(x)).collect();
    let mut arrangement = rest.clone();
    let mut found = None;
    permutations(&mut arrangement, 0, &mut |arr| {
        let mut sigma = tuple.to_vec();
        sigma.extend_from_slice(arr);
        if preserves(&sigma, hexads) {
            found = Some(sigma);
            true
        } else {
            false
        }
    });
    found
}

/// Heap-style recursive enumeration; stops when `visit` returns true.
fn permutations(items: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == items.len() {
        return visit(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        if permutations(items, k + 1, visit) {
            return true;
        }
        items.swap(k, i);
    }
    false
}

/// Signs `ε` such that `e_i ↦ ε_i e_{σ(i)}` preserves the code.
fn lift_signs(sigma: &[usize], rows: &[Word], code: &HashSet<Word>) -> Option<[u8; 12]> {
    (0..1u32 << 12).find_map(|mask| {
        let eps: [u8; 12] = std::array::from_fn(|i| if mask >> i & 1 == 1 { 2 } else { 1 });
        let ok = rows.iter().all(|row| {
            let mut image = [0u8; 12];
            for i in 0..12 {
                image[sigma[i]] = row[i] * eps[i] % 3;
            }
            code.contains(&image)
        });
        ok.then_some(eps)
    })
}

fn monomial_permutation(sigma: &[usize], eps: &[u8; 12]) -> Result<Permutation> {
    let images = (0..24)
        .map(|x| {
            let (i, negative) = (x / 2, x % 2 == 1);
            let flips = eps[i] == 2;
            2 * sigma[i] + usize::from(negative != flips)
        })
        .collect();
    Permutation::new(images)
}

/// `2.M12` on 24 points, order 190080.
pub fn golay_double_cover() -> Result<PermGroup> {
    let code = golay_code();
    let hexads = golay_hexads(&code)?;
    let rows = golay_rows();
    let code_set: HashSet<Word> = code.into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut chain = StabilizerChain::build(12, &[], &[])?;
    let mut gens = Vec::new();
    let mut points: Vec<usize> = (0..12).collect();
    while chain.order() < 95040 {
        points.shuffle(&mut rng);
        let tuple: [usize; 5] = std::array::from_fn(|i| points[i]);
        let sigma = automorphism_from_tuple(&tuple, &hexads)
            .ok_or_else(|| Error::InvalidArgument("hexad system is not 5-transitive".into()))?;
        if chain.add_generator(Permutation::new(sigma.clone())?)? {
            let eps = lift_signs(&sigma, &rows, &code_set)
                .ok_or_else(|| Error::InvalidArgument("coordinate permutation does not lift".into()))?;
            gens.push(monomial_permutation(&sigma, &eps)?);
        }
        if chain.order() > 95040 {
            return Err(Error::InvalidArgument("hexad automorphisms exceed M12".into()));
        }
    }
    let identity: Vec<usize> = (0..12).collect();
    gens.push(monomial_permutation(&identity, &[2; 12])?);
    let group = PermGroup::new(24, gens)?;
    if group.order() != 190_080 {
        return Err(Error::InvalidArgument(format!("Golay monomial group has order {}", group.order())));
    }
    Ok(group)
}

/// `3.S6` on 18 points, order 2160.
pub fn hyperoval_triple_cover() -> Result<PermGroup> {
    let k = Field::new(2, 2)?;
    let space = VectorSpace::new(k.clone(), 3)?;
    let mut representatives: Vec<Vec<u32>> = (0..4).map(|t| vec![1, t, k.mul(t, t)]).collect();
    representatives.push(vec![0, 0, 1]);
    representatives.push(vec![0, 1, 0]);
    let mut points: Vec<usize> = representatives
        .iter()
        .flat_map(|v| (1..4).map(|c| space.index(&space.scale(c, v)) - 1).collect::<Vec<_>>())
        .collect();
    points.sort_unstable();
    let mut member = vec![false; space.size() - 1];
    for &x in &points {
        member[x] = true;
    }
    let gamma = linear_group_on_vectors(LinearKind::GammaL, 3, &k)?;
    let stabilizer = filter_subgroup(&gamma, gamma.order(), |g| points.iter().all(|&x| member[g.apply(x)]))?;
    let group = stabilizer.restrict_to(&points)?;
    if group.order() != 2160 {
        return Err(Error::InvalidArgument(format!("hyperoval stabilizer has order {}", group.order())));
    }
    Ok(group)
}
