//! Row vectors over `F_q`, semilinear maps, and the classical groups
//! SL ≤ GL, ΣL ≤ ΓL as permutation groups on nonzero vectors.
//!
//! Vector `(a_1, …, a_d)` has index `Σ a_i q^{d−i}`, so index order is the
//! coefficient-lexicographic order; the nonzero vector of index `k` is
//! permutation point `k − 1`. A semilinear map `(A, j)` sends `v` to
//! `(vA)^{φ^j}` with `φ` the coordinatewise Frobenius.

use crate::error::{Error, Result};
use crate::linear::field::Field;
use crate::perm::{PermGroup, Permutation};

/// Cap on the number of points of constructed linear actions.
pub const MAX_LINEAR_POINTS: usize = 10_000;

#[derive(Debug, Clone)]
pub struct VectorSpace {
    pub field: Field,
    pub d: usize,
    size: usize,
}

impl VectorSpace {
    pub fn new(field: Field, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        let size = (field.q() as usize)
            .checked_pow(d as u32)
            .filter(|&s| s <= 16 * MAX_LINEAR_POINTS)
            .ok_or_else(|| Error::capacity("vector space size", (16 * MAX_LINEAR_POINTS) as u128))?;
        Ok(VectorSpace { field, d, size })
    }

    /// `q^d`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index(&self, v: &[u32]) -> usize {
        let q = self.field.q() as usize;
        v.iter().fold(0, |acc, &a| acc * q + a as usize)
    }

    pub fn vector(&self, mut index: usize) -> Vec<u32> {
        let q = self.field.q() as usize;
        let mut v = vec![0u32; self.d];
        for i in (0..self.d).rev() {
            v[i] = (index % q) as u32;
            index /= q;
        }
        v
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn scale(&self, c: u32, v: &[u32]) -> Vec<u32> {
        v.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    pub fn unit(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.d];
        v[i] = 1;
        v
    }

    /// Span of `vectors` as a membership mask over vector indices.
    pub fn span(&self, vectors: &[Vec<u32>]) -> Vec<bool> {
        let mut member = vec![false; self.size];
        member[0] = true;
        let mut list = vec![vec![0u32; self.d]];
        for v in vectors {
            let current = list.clone();
            for c in 1..self.field.q() {
                let cv = self.scale(c, v);
                for u in &current {
                    let w = self.add(u, &cv);
                    let idx = self.index(&w);
                    if !member[idx] {
                        member[idx] = true;
                        list.push(w);
                    }
                }
            }
        }
        member
    }
}

/// `v ↦ (vA)^{φ^frob}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilinear {
    pub matrix: Vec<Vec<u32>>,
    pub frob: u32,
}

impl Semilinear {
    pub fn identity(d: usize) -> Self {
        Self::diagonal(&vec![1; d])
    }

    pub fn diagonal(entries: &[u32]) -> Self {
        let d = entries.len();
        let mut m = vec![vec![0u32; d]; d];
        for i in 0..d {
            m[i][i] = entries[i];
        }
        Semilinear { matrix: m, frob: 0 }
    }

    pub fn matrix(rows: Vec<Vec<u32>>) -> Self {
        Semilinear { matrix: rows, frob: 0 }
    }

    /// `I + a E_{ij}`.
    pub fn transvection(d: usize, i: usize, j: usize, a: u32) -> Self {
        let mut t = Self::identity(d);
        t.matrix[i][j] = a;
        t
    }

    pub fn frobenius(d: usize, j: u32) -> Self {
        Semilinear {
            frob: j,
            ..Self::identity(d)
        }
    }

    pub fn apply(&self, space: &VectorSpace, v: &[u32]) -> Vec<u32> {
        let k = &space.field;
        let d = space.d;
        let mut out = vec![0u32; d];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(&self.matrix[i]) {
                *o = k.add(*o, k.mul(vi, m));
            }
        }
        if self.frob != 0 {
            out = k.frobenius_vec(&out, self.frob);
        }
        out
    }

    /// The permutation induced on nonzero vectors.
    pub fn on_nonzero(&self, space: &VectorSpace) -> Result<Permutation> {
        let images = (1..space.size())
            .map(|idx| space.index(&self.apply(space, &space.vector(idx))) - 1)
            .collect();
        Permutation::new(images)
            .map_err(|_| Error::InvalidArgument("map is not invertible on vectors".into()))
    }

    /// The permutation induced on all vectors (zero is point 0).
    pub fn on_all(&self, space: &VectorSpace) -> Result<Permutation> {
        let images = (0..space.size())
            .map(|idx| space.index(&self.apply(space, &space.vector(idx))))
            .collect();
        Permutation::new(images)
            .map_err(|_| Error::InvalidArgument("map is not invertible on vectors".into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinearKind {
    SL,
    GL,
    SigmaL,
    GammaL,
}

impl std::str::FromStr for LinearKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sl" => Ok(Self::SL),
            "gl" => Ok(Self::GL),
            "sigmal" => Ok(Self::SigmaL),
            "gammal" => Ok(Self::GammaL),
            _ => Err(Error::InvalidArgument(format!("unknown linear group kind `{s}`"))),
        }
    }
}

/// Elementary transvections `I + a E_ij` over an `F_p`-basis of `F_q`.
pub fn sl_generators(field: &Field, d: usize) -> Vec<Semilinear> {
    let basis = field.prime_field_basis();
    let mut gens = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                for &a in &basis {
                    gens.push(Semilinear::transvection(d, i, j, a));
                }
            }
        }
    }
    gens
}

/// `δ^i = diag(λ^i, 1, …, 1)`.
pub fn delta(field: &Field, d: usize, i: i64) -> Semilinear {
    let mut entries = vec![1u32; d];
    entries[0] = field.lambda_pow(i);
    Semilinear::diagonal(&entries)
}

pub fn generators(kind: LinearKind, field: &Field, d: usize) -> Vec<Semilinear> {
    let mut gens = sl_generators(field, d);
    if matches!(kind, LinearKind::GL | LinearKind::GammaL) && field.q() > 2 {
        gens.push(delta(field, d, 1));
    }
    if matches!(kind, LinearKind::SigmaL | LinearKind::GammaL) && field.f() > 1 {
        gens.push(Semilinear::frobenius(d, 1));
    }
    gens
}

/// Order of SL, GL, ΣL or ΓL in dimension `d` over `F_q`.
pub fn classical_order(kind: LinearKind, d: usize, q: u64, f: u32) -> u128 {
    let q = q as u128;
    let mut sl: u128 = q.pow((d * (d - 1) / 2) as u32);
    for i in 2..=d as u32 {
        sl *= q.pow(i) - 1;
    }
    match kind {
        LinearKind::SL => sl,
        LinearKind::GL => sl * (q - 1),
        LinearKind::SigmaL => sl * f as u128,
        LinearKind::GammaL => sl * (q - 1) * f as u128,
    }
}

/// The chosen classical group acting on the `q^d − 1` nonzero vectors;
/// the chain order is checked against the order formula.
pub fn linear_group_on_vectors(kind: LinearKind, d: usize, field: &Field) -> Result<PermGroup> {
    if d < 2 {
        return Err(Error::InvalidArgument("dimension must be at least 2".into()));
    }
    let space = VectorSpace::new(field.clone(), d)?;
    if space.size() - 1 > MAX_LINEAR_POINTS {
        return Err(Error::capacity("nonzero vectors", MAX_LINEAR_POINTS as u128));
    }
    let gens = generators(kind, field, d)
        .iter()
        .map(|g| g.on_nonzero(&space))
        .collect::<Result<Vec<_>>>()?;
    let group = PermGroup::new(space.size() - 1, gens)?;
    let expected = classical_order(kind, d, field.q() as u64, field.f());
    if group.order() != expected {
        return Err(Error::InvalidArgument(format!(
            "constructed order {} differs from {expected}",
            group.order()
        )));
    }
    Ok(group)
}
