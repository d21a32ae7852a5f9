//! Explicit rank 3 constructions: two affine groups on `F_2^4`, the Sylow
//! normalizer model of order `q³(q²−1)`, extraspecial holomorphs, and the
//! sum-zero wreath subgroups.

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linear::field::Field;
use crate::linear::space::{classical_order, generators, LinearKind, Semilinear, VectorSpace};
use crate::numtheory::{as_prime_power, is_prime};
use crate::perm::{PermGroup, Permutation, StabilizerChain};
use crate::structure::aut::{automorphism_group, greedy_generating_sequence, DEFAULT_SEARCH_BUDGET};
use crate::structure::SmallGroupTable;

/// Largest degree for the sum-zero construction.
pub const MAX_SUM_ZERO_DEGREE: usize = 1000;

/// The rank stated in the literature for the `q³(q²−1)` construction.
pub const STATED_RANK_SYLOW_MODEL: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AffineExample {
    /// Linear part fixes a hyperplane.
    G1,
    /// Linear part fixes a 1-dimensional subspace.
    G2,
}

const SHARED: [[u32; 4]; 4] = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]];
const G1_SECOND: [[u32; 4]; 4] = [[1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]];
const G2_SECOND: [[u32; 4]; 4] = [[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]];

fn rows(m: &[[u32; 4]; 4]) -> Vec<Vec<u32>> {
    m.iter().map(|r| r.to_vec()).collect()
}

fn translation(space: &VectorSpace, t: &[u32]) -> Permutation {
    let images = (0..space.size())
        .map(|idx| space.index(&space.add(&space.vector(idx), t)))
        .collect();
    Permutation::new(images).expect("translations are bijective")
}

/// `F_2^4 : H` on the 16 vectors, vector `(a_1, …, a_4)` at point
/// `8a_1 + 4a_2 + 2a_3 + a_4`; matrices act on row vectors.
pub fn build_affine_example(which: AffineExample) -> Result<PermGroup> {
    let space = VectorSpace::new(Field::new(2, 1)?, 4)?;
    let second = match which {
        AffineExample::G1 => &G1_SECOND,
        AffineExample::G2 => &G2_SECOND,
    };
    let mut gens: Vec<Permutation> = (0..4).map(|k| translation(&space, &space.unit(k))).collect();
    gens.push(Semilinear::matrix(rows(&SHARED)).on_all(&space)?);
    gens.push(Semilinear::matrix(rows(second)).on_all(&space)?);
    let group = PermGroup::new(16, gens)?;
    if group.order() != 16 * 168 {
        return Err(Error::InvalidArgument(format!("affine example has order {}", group.order())));
    }
    Ok(group)
}

/// The group `N` of pairs `(α, β) ∈ F_{q²}²` with `β + β^q = −α^{q+1}`
/// and product `(α + α′, β + β′ − α α′^q)`, extended by the torus
/// `(α, β) ↦ (aα, a^{q+1}β)`, acting on `N` by right multiplication and
/// the torus.
#[derive(Debug, Clone)]
pub struct SylowModel {
    pub q: u64,
    pub group: PermGroup,
    /// Multiplication table of `N`, elements in point order.
    pub normal: SmallGroupTable,
    /// The pairs `(α, β)` in point order; the identity is point 0.
    pub elements: Vec<(u32, u32)>,
}

impl SylowModel {
    /// Computed rank next to the stated rank.
    pub fn rank_report(&self) -> Result<(usize, usize, bool)> {
        let rank = self.group.rank()?;
        Ok((rank, STATED_RANK_SYLOW_MODEL, rank != STATED_RANK_SYLOW_MODEL))
    }
}

pub fn build_sylow_model(q: u64) -> Result<SylowModel> {
    let (p, f) = as_prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("q = {q} is not a prime power")))?;
    if q > 8 {
        return Err(Error::capacity("q for the q^3(q^2-1) construction", 8u128));
    }
    let k = Field::new(p, 2 * f)?;
    let qq = k.q();
    let mut elements = Vec::new();
    for a in 0..qq {
        let rhs = k.neg(k.pow(a, q + 1));
        for b in 0..qq {
            if k.add(b, k.frobenius(b, f)) == rhs {
                elements.push((a, b));
            }
        }
    }
    if elements.len() as u64 != q * q * q {
        return Err(Error::InvalidArgument("wrong number of solutions".into()));
    }
    let mul = |&(a, b): &(u32, u32), &(c, e): &(u32, u32)| {
        (k.add(a, c), k.sub(k.add(b, e), k.mul(a, k.frobenius(c, f))))
    };
    let normal = SmallGroupTable::from_elements(&elements, mul)?;
    let mut gens: Vec<Permutation> = greedy_generating_sequence(&normal)
        .into_iter()
        .map(|g| normal.regular_permutation(g))
        .collect();
    let a = k.lambda();
    let a_norm = k.pow(a, q + 1);
    let index: std::collections::HashMap<(u32, u32), usize> =
        elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let torus = elements
        .iter()
        .map(|&(x, y)| {
            index
                .get(&(k.mul(a, x), k.mul(a_norm, y)))
                .copied()
                .ok_or_else(|| Error::InvalidArgument("torus does not preserve N".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    gens.push(Permutation::new(torus)?);
    let group = PermGroup::new(elements.len(), gens)?;
    let expected = (q * q * q * (q * q - 1)) as u128;
    if group.order() != expected {
        return Err(Error::InvalidArgument(format!("order {} instead of {expected}", group.order())));
    }
    Ok(SylowModel {
        q,
        group,
        normal,
        elements,
    })
}

/// The holomorph `N : Aut(N)` of an extraspecial group of exponent `p`.
#[derive(Debug, Clone)]
pub struct Holomorph {
    pub group: PermGroup,
    pub normal: SmallGroupTable,
    pub automorphism_order: u128,
}

/// `|Sp_{2m}(p)|`.
fn symplectic_order(p: u64, m: u32) -> u128 {
    let p = p as u128;
    (1..=m).fold(p.pow(m * m), |acc, i| acc * (p.pow(2 * i) - 1))
}

/// `N = p^{1+2m}` as triples `(a, b, c)`, `a, b ∈ F_p^m`, with product
/// `(a + a′, b + b′, c + c′ + a·b′)`, acting on itself by right
/// multiplication and by the automorphism group found by exhaustive
/// search. `cap` bounds the holomorph order before any search starts.
pub fn build_extraspecial_holomorph(p: u64, m: u32, cap: u128, exec: Execution) -> Result<Holomorph> {
    if !is_prime(p) || p == 2 {
        return Err(Error::InvalidArgument("p must be an odd prime".into()));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let n = (p as u128).pow(1 + 2 * m);
    if n > 729 {
        return Err(Error::capacity("extraspecial group order", 729u128));
    }
    let aut_order = (p as u128).pow(2 * m) * (p as u128 - 1) * symplectic_order(p, m);
    if n * aut_order > cap {
        return Err(Error::capacity("holomorph order", cap));
    }
    let m = m as usize;
    let p = p as usize;
    let decode = |x: usize| -> Vec<usize> {
        let mut x = x;
        (0..2 * m + 1)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    };
    let elements: Vec<Vec<usize>> = (0..n as usize).map(decode).collect();
    let normal = SmallGroupTable::from_elements(&elements, |x, y| {
        let mut z: Vec<usize> = x.iter().zip(y).map(|(a, b)| (a + b) % p).collect();
        let dot: usize = (0..m).map(|i| x[i] * y[m + i]).sum();
        z[2 * m] = (z[2 * m] + dot) % p;
        z
    })?;
    let aut = automorphism_group(&normal, DEFAULT_SEARCH_BUDGET, exec)?;
    if aut.order() as u128 != aut_order {
        return Err(Error::InvalidArgument(format!(
            "automorphism group has order {} instead of {aut_order}",
            aut.order()
        )));
    }
    let mut gens: Vec<Permutation> = greedy_generating_sequence(&normal)
        .into_iter()
        .map(|g| normal.regular_permutation(g))
        .collect();
    let mut aut_chain = StabilizerChain::build(n as usize, &[], &[])?;
    for map in &aut.maps {
        if aut_chain.order() == aut_order {
            break;
        }
        let g = Permutation::new(map.iter().map(|&x| x as usize).collect())?;
        if aut_chain.add_generator(g.clone())? {
            gens.push(g);
        }
    }
    let group = PermGroup::new(n as usize, gens)?;
    if group.order() != n * aut_order {
        return Err(Error::InvalidArgument(format!("holomorph has order {}", group.order())));
    }
    Ok(Holomorph {
        group,
        normal,
        automorphism_order: aut_order,
    })
}

/// `G = (W : D) : S_n` on `V × {1..n}`, point `(v, i)` at `i·|V| + v`,
/// where `W` is the sum-zero subgroup of `V^n`, `D` the diagonal copy of
/// `GL(V)` and `S_n` permutes the copies.
pub fn build_sum_zero_example(dv: usize, pv: u64, n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(Error::InvalidArgument("need at least 3 copies".into()));
    }
    let field = Field::new(pv, 1)?;
    let space = VectorSpace::new(field.clone(), dv)?;
    let size = space.size();
    let degree = size * n;
    if degree > MAX_SUM_ZERO_DEGREE {
        return Err(Error::capacity("sum-zero degree", MAX_SUM_ZERO_DEGREE as u128));
    }
    let lift = |per_copy: &dyn Fn(usize, usize) -> usize, copy_map: &dyn Fn(usize) -> usize| {
        let images = (0..degree)
            .map(|x| {
                let (i, v) = (x / size, x % size);
                copy_map(i) * size + per_copy(i, v)
            })
            .collect();
        Permutation::new(images)
    };
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        for k in 0..dv {
            let e = space.unit(k);
            let minus_e = space.scale(field.neg(1), &e);
            gens.push(lift(
                &|j, v| {
                    let x = space.vector(v);
                    if j == i {
                        space.index(&space.add(&x, &e))
                    } else if j == n - 1 {
                        space.index(&space.add(&x, &minus_e))
                    } else {
                        v
                    }
                },
                &|j| j,
            )?);
        }
    }
    for g in generators(LinearKind::GL, &field, dv) {
        let on_v = g.on_all(&space)?;
        gens.push(lift(&|_, v| on_v.apply(v), &|j| j)?);
    }
    gens.push(lift(&|_, v| v, &|j| if j < 2 { 1 - j } else { j })?);
    gens.push(lift(&|_, v| v, &|j| (j + 1) % n)?);
    let group = PermGroup::new(degree, gens)?;
    let factorial: u128 = (1..=n as u128).product();
    let expected =
        (size as u128).pow(n as u32 - 1) * classical_order(LinearKind::GL, dv, pv, 1) * factorial;
    if group.order() != expected {
        return Err(Error::InvalidArgument(format!("order {} instead of {expected}", group.order())));
    }
    Ok(group)
}
