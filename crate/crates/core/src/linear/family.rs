//! Groups `G` with `SLbar ≤ G ≤ ΓLbar` acting on `Δ`, the set of orbits of
//! the scalar subgroup `C = ⟨λ^r⟩` on nonzero vectors of `F_q^d`.
//!
//! Such groups correspond to subgroups `S` of the quotient
//! `Q = ΓL/(SL·C) ≅ Z_g ⋊ Z_f`, `g = gcd(q − 1, d·r)`, where the coset of
//! `δ^i φ^j` is the pair `(i mod g, j)`. Conjugating `δ^i` by `φ^j` gives
//! `δ^{i·p^{f−j}}`, which fixes the product law.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linear::field::Field;
use crate::linear::space::{
    classical_order, delta, sl_generators, LinearKind, Semilinear, VectorSpace, MAX_LINEAR_POINTS,
};
use crate::numtheory::{as_prime_power, gcd, is_prime, is_primitive_prime_divisor, mod_pow};
use crate::perm::{BlockSystem, PermGroup, Permutation, StabilizerChain};

/// Points of `Δ`, numbered by increasing canonical vector.
///
/// The canonical vector of a point is the least vector of its `C`-orbit;
/// the base point `0` is the orbit of `e_d = (0, …, 0, 1)`.
#[derive(Debug, Clone)]
pub struct DeltaSpace {
    space: VectorSpace,
    r: u64,
    point_of: Vec<u32>,
    canonical: Vec<usize>,
}

impl DeltaSpace {
    pub fn new(field: Field, d: usize, r: u64) -> Result<Self> {
        let q = field.q() as u64;
        if r == 0 || !(q - 1).is_multiple_of(r) {
            return Err(Error::InvalidArgument(format!("r = {r} does not divide q - 1 = {}", q - 1)));
        }
        let space = VectorSpace::new(field, d)?;
        let degree = r as usize * (space.size() - 1) / (q as usize - 1);
        if degree > MAX_LINEAR_POINTS {
            return Err(Error::capacity("points of Δ", MAX_LINEAR_POINTS as u128));
        }
        let c = space.field.lambda_pow(r as i64);
        let c_order = (q - 1) / r;
        let mut point_of = vec![u32::MAX; space.size()];
        let mut canonical = Vec::with_capacity(degree);
        for idx in 1..space.size() {
            if point_of[idx] != u32::MAX {
                continue;
            }
            let id = canonical.len() as u32;
            canonical.push(idx);
            let mut v = space.vector(idx);
            for _ in 0..c_order {
                v = space.scale(c, &v);
                point_of[space.index(&v)] = id;
            }
        }
        debug_assert_eq!(canonical.len(), degree);
        Ok(DeltaSpace {
            space,
            r,
            point_of,
            canonical,
        })
    }

    pub fn degree(&self) -> usize {
        self.canonical.len()
    }

    pub fn space(&self) -> &VectorSpace {
        &self.space
    }

    pub fn field(&self) -> &Field {
        &self.space.field
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    /// The point containing a nonzero vector.
    pub fn point(&self, v: &[u32]) -> usize {
        let p = self.point_of[self.space.index(v)];
        assert!(p != u32::MAX, "zero vector has no point");
        p as usize
    }

    pub fn canonical_vector(&self, point: usize) -> Vec<u32> {
        self.space.vector(self.canonical[point])
    }

    /// The point `λ^k v̄` for the base vector `v = e_d`.
    pub fn scalar_point(&self, k: i64) -> usize {
        let v = self.space.unit(self.space.d - 1);
        self.point(&self.space.scale(self.field().lambda_pow(k), &v))
    }

    /// The induced permutation of `Δ`. Fails unless the map permutes the
    /// `C`-orbits, which is checked on every vector.
    pub fn permutation(&self, g: &Semilinear) -> Result<Permutation> {
        let images: Vec<usize> = self
            .canonical
            .iter()
            .map(|&idx| self.point(&g.apply(&self.space, &self.space.vector(idx))))
            .collect();
        for idx in 1..self.space.size() {
            let v = self.space.vector(idx);
            if self.point(&g.apply(&self.space, &v)) != images[self.point_of[idx] as usize] {
                return Err(Error::InvalidArgument("map does not permute the C-orbits".into()));
            }
        }
        Permutation::new(images)
    }

    /// The blocks `{λ^k v̄}` coming from 1-dimensional subspaces.
    pub fn line_blocks(&self) -> Result<BlockSystem> {
        let k = self.field();
        let mut label = vec![usize::MAX; self.degree()];
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.degree() {
            if label[x] != usize::MAX {
                continue;
            }
            let v = self.canonical_vector(x);
            let mut cell: Vec<usize> = (0..self.r as i64)
                .map(|e| self.point(&self.space.scale(k.lambda_pow(e), &v)))
                .collect();
            cell.sort_unstable();
            cell.dedup();
            for &y in &cell {
                label[y] = parts.len();
            }
            parts.push(cell);
        }
        BlockSystem::new(self.degree(), parts)
    }
}

/// The coset of `δ^delta φ^phi` modulo `SL·C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CosetTag {
    pub delta: u64,
    pub phi: u32,
}

impl fmt::Display for CosetTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.delta {
            0 => {}
            1 => parts.push("delta".to_string()),
            i => parts.push(format!("delta^{i}")),
        }
        match self.phi {
            0 => {}
            1 => parts.push("phi".to_string()),
            j => parts.push(format!("phi^{j}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl FromStr for CosetTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tag = CosetTag { delta: 0, phi: 0 };
        let s = s.trim();
        if s == "1" {
            return Ok(tag);
        }
        for factor in s.split('*') {
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::InvalidArgument(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor.trim(), 1),
            };
            match name {
                "delta" => tag.delta += exp,
                "phi" => tag.phi += u32::try_from(exp).map_err(|_| Error::InvalidArgument("phi exponent too large".into()))?,
                _ => return Err(Error::InvalidArgument(format!("unknown selector factor `{name}`"))),
            }
        }
        Ok(tag)
    }
}

/// Parameters `(d, q = p^f, r)` and the selector tags adjoined to `SLbar`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub d: usize,
    pub p: u64,
    pub f: u32,
    pub r: u64,
    pub selectors: Vec<CosetTag>,
}

impl FamilySpec {
    pub fn new(d: usize, q: u64, r: u64, selectors: Vec<CosetTag>) -> Result<Self> {
        let (p, f) = as_prime_power(q)
            .ok_or_else(|| Error::InvalidArgument(format!("q = {q} is not a prime power")))?;
        let spec = FamilySpec { d, p, f, r, selectors };
        spec.validate()?;
        Ok(spec)
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }

    pub fn validate(&self) -> Result<()> {
        let q = self.q();
        if self.d < 2 {
            return Err(Error::InvalidArgument("d must be at least 2".into()));
        }
        if self.r < 2 || !(q - 1).is_multiple_of(self.r) {
            return Err(Error::InvalidArgument(format!("need r >= 2 dividing q - 1, got r = {}", self.r)));
        }
        for t in &self.selectors {
            if t.delta >= q - 1 || t.phi >= self.f {
                return Err(Error::InvalidArgument(format!(
                    "selector {t} is not of the form delta^i*phi^j with i < {} and j < {}",
                    q - 1,
                    self.f
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = if self.selectors.is_empty() {
            "none".to_string()
        } else {
            self.selectors.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        };
        write!(f, "d={},q={},r={},gens={}", self.d, self.q(), self.r, gens)
    }
}

/// Parses `d=3,q=4,r=3,gens=delta,phi`; tags after `gens=` are
/// comma-separated and `none` (or an absent `gens`) selects `SLbar`.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (mut d, mut q, mut r) = (None, None, None);
        let mut selectors = Vec::new();
        let mut in_gens = false;
        for token in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let value = match token.split_once('=') {
                Some((key, value)) => {
                    in_gens = false;
                    let num = || {
                        value
                            .trim()
                            .parse::<u64>()
                            .map_err(|_| Error::InvalidArgument(format!("bad value in `{token}`")))
                    };
                    match key.trim() {
                        "d" => d = Some(num()?),
                        "q" => q = Some(num()?),
                        "r" => r = Some(num()?),
                        "gens" => in_gens = true,
                        other => return Err(Error::InvalidArgument(format!("unknown key `{other}`"))),
                    }
                    if !in_gens {
                        continue;
                    }
                    value.trim()
                }
                None if in_gens => token,
                None => return Err(Error::InvalidArgument(format!("unexpected token `{token}`"))),
            };
            if value != "none" {
                selectors.push(value.parse()?);
            }
        }
        let missing = |k: &str| Error::InvalidArgument(format!("missing `{k}=`"));
        FamilySpec::new(
            d.ok_or_else(|| missing("d"))? as usize,
            q.ok_or_else(|| missing("q"))?,
            r.ok_or_else(|| missing("r"))?,
            selectors,
        )
    }
}

/// The quotient `Q = Z_g ⋊ Z_f`; element `(i, j)` has index `j·g + i`.
#[derive(Debug, Clone)]
pub struct SelectorQuotient {
    pub g: u64,
    pub f: u32,
    p: u64,
}

impl SelectorQuotient {
    pub fn new(d: usize, p: u64, f: u32, r: u64) -> Self {
        let q = p.pow(f);
        SelectorQuotient {
            g: gcd(q - 1, d as u64 * r),
            f,
            p,
        }
    }

    pub fn order(&self) -> usize {
        (self.g * self.f as u64) as usize
    }

    pub fn element(&self, t: CosetTag) -> usize {
        (t.phi % self.f) as usize * self.g as usize + (t.delta % self.g) as usize
    }

    pub fn tag(&self, x: usize) -> CosetTag {
        CosetTag {
            delta: x as u64 % self.g,
            phi: (x as u64 / self.g) as u32,
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.tag(a), self.tag(b));
        let twist = mod_pow(self.p, ((self.f - x.phi) % self.f) as u64, self.g);
        self.element(CosetTag {
            delta: (x.delta + y.delta * twist) % self.g,
            phi: (x.phi + y.phi) % self.f,
        })
    }

    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            for &g in gens {
                let y = self.mul(list[i], g);
                if !member[y] {
                    member[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        member
    }

    /// Every subgroup, sorted by order then mask; subgroups of a metacyclic
    /// group are 2-generated, so pairs of elements suffice.
    pub fn subgroups(&self) -> Vec<QuotientSubgroup> {
        let n = self.order();
        let mut masks: Vec<Vec<bool>> = Vec::new();
        for a in 0..n {
            for b in a..n {
                let m = self.closure(&[a, b]);
                if !masks.contains(&m) {
                    masks.push(m);
                }
            }
        }
        let mut subs: Vec<QuotientSubgroup> = masks
            .into_iter()
            .map(|mask| {
                let mut gens = Vec::new();
                let mut span = self.closure(&[]);
                for x in 0..n {
                    if mask[x] && !span[x] {
                        gens.push(x);
                        span = self.closure(&gens);
                    }
                }
                QuotientSubgroup {
                    generators: gens.iter().map(|&x| self.tag(x)).collect(),
                    mask,
                }
            })
            .collect();
        subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| b.mask.cmp(&a.mask)));
        subs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSubgroup {
    pub mask: Vec<bool>,
    pub generators: Vec<CosetTag>,
}

impl QuotientSubgroup {
    pub fn order(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }
}

/// Shared data for all groups with one `(d, q, r)`.
#[derive(Debug, Clone)]
pub struct FamilyContext {
    pub d: usize,
    pub r: u64,
    pub delta_space: DeltaSpace,
    pub quotient: SelectorQuotient,
    sl_generators: Vec<Permutation>,
    sl_chain: StabilizerChain,
    sigma_chain: StabilizerChain,
    sigma_square_chain: StabilizerChain,
}

impl FamilyContext {
    pub fn new(d: usize, q: u64, r: u64) -> Result<Self> {
        let probe = FamilySpec::new(d, q, r, Vec::new())?;
        let field = Field::new(probe.p, probe.f)?;
        let delta_space = DeltaSpace::new(field.clone(), d, r)?;
        let sl_generators = sl_generators(&field, d)
            .iter()
            .map(|g| delta_space.permutation(g))
            .collect::<Result<Vec<_>>>()?;
        let sl_chain = StabilizerChain::build(delta_space.degree(), &sl_generators, &[0])?;
        let expected = classical_order(LinearKind::SL, d, q, probe.f) / gcd(d as u64, (q - 1) / r) as u128;
        if sl_chain.order() != expected {
            return Err(Error::InvalidArgument(format!(
                "image of SL has order {} instead of {expected}",
                sl_chain.order()
            )));
        }
        let mut sigma_chain = sl_chain.clone();
        sigma_chain.add_generator(delta_space.permutation(&Semilinear::frobenius(d, 1))?)?;
        let mut sigma_square_chain = sigma_chain.clone();
        sigma_square_chain.add_generator(delta_space.permutation(&delta(&field, d, 2))?)?;
        {
            let scalar = field.lambda_pow(r as i64);
            let c = delta_space.permutation(&Semilinear::diagonal(&vec![scalar; d]))?;
            if !c.is_identity() {
                return Err(Error::InvalidArgument("C does not act trivially on Δ".into()));
            }
        }
        Ok(FamilyContext {
            d,
            r,
            quotient: SelectorQuotient::new(d, probe.p, probe.f, r),
            delta_space,
            sl_generators,
            sl_chain,
            sigma_chain,
            sigma_square_chain,
        })
    }

    pub fn field(&self) -> &Field {
        self.delta_space.field()
    }

    pub fn spec(&self, selectors: Vec<CosetTag>) -> Result<FamilySpec> {
        FamilySpec::new(self.d, self.field().q() as u64, self.r, selectors)
    }

    /// The permutation of `Δ` induced by `δ^i φ^j`.
    pub fn tag_permutation(&self, t: CosetTag) -> Result<Permutation> {
        let k = self.field();
        let mut g = delta(k, self.d, t.delta as i64);
        g.frob = t.phi % k.f();
        self.delta_space.permutation(&g)
    }

    pub fn sl_order(&self) -> u128 {
        self.sl_chain.order()
    }

    pub fn build(&self, selectors: &[CosetTag]) -> Result<FamilyGroup> {
        let spec = self.spec(selectors.to_vec())?;
        let mask = self
            .quotient
            .closure(&selectors.iter().map(|&t| self.quotient.element(t)).collect::<Vec<_>>());
        let mut chain = self.sl_chain.clone();
        let mut gens = self.sl_generators.clone();
        let mut tag_perms = Vec::new();
        for &t in selectors {
            let g = self.tag_permutation(t)?;
            chain.add_generator(g.clone())?;
            gens.push(g.clone());
            tag_perms.push(g);
        }
        let s_order = mask.iter().filter(|&&b| b).count() as u128;
        if chain.order() != self.sl_order() * s_order {
            return Err(Error::InvalidArgument(format!(
                "order {} disagrees with |SLbar|·|S| = {}",
                chain.order(),
                self.sl_order() * s_order
            )));
        }
        let g = self.quotient.g as usize;
        let i0 = (1..g).find(|&i| mask[i]);
        let gl_part_order = match i0 {
            None => self.sl_order(),
            Some(i) => {
                let mut c = self.sl_chain.clone();
                c.add_generator(self.tag_permutation(CosetTag { delta: i as u64, phi: 0 })?)?;
                c.order()
            }
        };
        let inside_sigma = tag_perms.iter().all(|g| self.sigma_chain.contains(g));
        let inside_sigma_square = tag_perms.iter().all(|g| self.sigma_square_chain.contains(g));
        Ok(FamilyGroup {
            spec,
            group: PermGroup::with_chain(gens, chain),
            quotient_mask: mask,
            sl_order: self.sl_order(),
            gl_part_order,
            inside_sigma,
            inside_sigma_square,
        })
    }
}

/// A constructed family group with the orders the rank criteria use.
#[derive(Debug, Clone)]
pub struct FamilyGroup {
    pub spec: FamilySpec,
    pub group: PermGroup,
    pub quotient_mask: Vec<bool>,
    pub sl_order: u128,
    /// `|G ∩ GLbar|`.
    pub gl_part_order: u128,
    /// Whether `G ≤ ΣLbar`, by chain membership of the selector images.
    pub inside_sigma: bool,
    /// Whether `G ≤ ⟨ΣLbar, δ̄²⟩`, likewise.
    pub inside_sigma_square: bool,
}

impl FamilyGroup {
    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn predicate(&self) -> FamilyPredicate {
        predicate_from_orders(self)
    }
}

/// The constructed group on `Δ`.
pub fn delta_action(spec: &FamilySpec) -> Result<PermGroup> {
    spec.validate()?;
    Ok(FamilyContext::new(spec.d, spec.q(), spec.r)?.build(&spec.selectors)?.group)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyPredicate {
    /// `None` when the parameters fall outside the proven criteria.
    pub rank3: Option<bool>,
    pub semiprimitive_not_innately: bool,
    pub reasons: Vec<String>,
}

impl FamilyPredicate {
    pub fn covered(&self) -> bool {
        self.rank3.is_some()
    }
}

/// `r | (d, q−1)` and `r ∤ (q−1)/(d, q−1)`.
pub fn semiprimitive_not_innately(d: usize, q: u64, r: u64) -> bool {
    let e = gcd(d as u64, q - 1);
    e.is_multiple_of(r) && !((q - 1) / e).is_multiple_of(r)
}

fn predicate_from_orders(fg: &FamilyGroup) -> FamilyPredicate {
    let spec = &fg.spec;
    let (order, gl_part) = (fg.order(), fg.gl_part_order);
    let (d, p, f, r, q) = (spec.d, spec.p, spec.f, spec.r, spec.q());
    let mut reasons = Vec::new();
    let snoti = semiprimitive_not_innately(d, q, r);
    reasons.push(format!(
        "r | (d, q-1) = {} and r does not divide (q-1)/(d, q-1) = {}: {snoti}",
        gcd(d as u64, q - 1),
        (q - 1) / gcd(d as u64, q - 1)
    ));
    let rank3 = if d >= 3 {
        if !is_prime(r) {
            reasons.push("r not prime".into());
            Some(false)
        } else {
            let ppd = is_primitive_prime_divisor(r, p, (r - 1) as u32).unwrap_or(false);
            reasons.push(format!("r = {r} is a primitive prime divisor of {p}^{} - 1: {ppd}", r - 1));
            let scaled = f as u128 * gl_part;
            let ratio = scaled / order;
            debug_assert_eq!(scaled % order, 0);
            let g = gcd(r - 1, ratio as u64);
            reasons.push(format!("gcd(r - 1, f·|G ∩ GLbar|/|G|) = gcd({}, {ratio}) = {g}", r - 1));
            Some(ppd && g == 1)
        }
    } else if d == 2 && r == 2 && p % 2 == 1 && q >= 5 {
        // Rank 3 needs some δ^i φ^j with i odd: elements of ⟨ΣL, δ², scalars⟩
        // scale the quotient by ⟨v⟩ by squares and keep the two halves of
        // the affine lines apart. For q ≡ 3 (mod 4) this is the same as
        // G ⊄ ΣLbar; for q ≡ 1 (mod 4) the image of δ² lies outside ΣLbar
        // and still gives rank 4.
        reasons.push(format!("G inside the image of ΣL: {}", fg.inside_sigma));
        reasons.push(format!("G inside the image of <ΣL, δ^2>: {}", fg.inside_sigma_square));
        if fg.inside_sigma_square != fg.inside_sigma {
            reasons.push("G contains δ^2 modulo ΣL but no δ^i φ^j with i odd".into());
        }
        Some(!fg.inside_sigma_square)
    } else {
        reasons.push(format!(
            "outside scope: (d, r) = ({d}, {r}) with q = {q} is not covered by the rank criteria"
        ));
        None
    };
    FamilyPredicate {
        rank3,
        semiprimitive_not_innately: snoti,
        reasons,
    }
}

/// Builds the group and evaluates the arithmetic rank criterion on it.
pub fn rank3_family_predicate(spec: &FamilySpec) -> Result<FamilyPredicate> {
    spec.validate()?;
    Ok(FamilyContext::new(spec.d, spec.q(), spec.r)?.build(&spec.selectors)?.predicate())
}

/// Predicted point-stabilizer orbits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuborbitModel {
    /// GL on nonzero vectors: `{λ^k v}` singletons and the complement of `⟨v⟩`.
    GlVectors,
    /// SL on nonzero vectors; for `d = 2` the affine lines `a·w + ⟨v⟩`.
    SlVectors,
    /// `GLbar` on `Δ`: `{λ^k v̄}` for `k = 1..r` and everything else.
    GlBar,
    /// `SLbar` on `Δ` for `d = 2`, `r = 2`, `p` odd, `q ≥ 5`.
    SlBarDim2,
    /// A rank 3 group on `Δ`: `{v̄}`, `{λ v̄, …, λ^{r−1} v̄}`, the rest.
    RankThreeBar,
}

impl SuborbitModel {
    pub fn name(&self) -> &'static str {
        match self {
            Self::GlVectors => "gl-vectors",
            Self::SlVectors => "sl-vectors",
            Self::GlBar => "glbar",
            Self::SlBarDim2 => "slbar-d2",
            Self::RankThreeBar => "rank3",
        }
    }
}

impl FromStr for SuborbitModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Self::GlVectors,
            Self::SlVectors,
            Self::GlBar,
            Self::SlBarDim2,
            Self::RankThreeBar,
        ]
        .into_iter()
        .find(|m| m.name() == s)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown suborbit model `{s}`")))
    }
}

fn normalize(mut parts: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for p in &mut parts {
        p.sort_unstable();
        p.dedup();
    }
    parts.retain(|p| !p.is_empty());
    parts.sort();
    parts
}

fn complement(degree: usize, taken: &[Vec<usize>]) -> Vec<usize> {
    let mut used = vec![false; degree];
    for p in taken {
        for &x in p {
            used[x] = true;
        }
    }
    (0..degree).filter(|&x| !used[x]).collect()
}

/// The predicted orbits of the stabilizer of point 0, as sorted sets
/// ordered by least point. For vector models `r` is ignored and the points
/// are the nonzero vectors.
pub fn expected_suborbits(model: SuborbitModel, field: &Field, d: usize, r: u64) -> Result<Vec<Vec<usize>>> {
    let q = field.q() as u64;
    let hypothesis = |msg: &str| Err(Error::Hypothesis(msg.to_string()));
    match model {
        SuborbitModel::GlVectors | SuborbitModel::SlVectors => {
            let space = VectorSpace::new(field.clone(), d)?;
            let n = space.size() - 1;
            let v = space.unit(d - 1);
            let mut parts: Vec<Vec<usize>> = (0..q as i64 - 1)
                .map(|k| vec![space.index(&space.scale(field.lambda_pow(k), &v)) - 1])
                .collect();
            if model == SuborbitModel::SlVectors && d == 2 {
                let w = space.unit(0);
                for a in 1..q as u32 {
                    let aw = space.scale(a, &w);
                    parts.push(
                        (0..q as u32)
                            .map(|mu| space.index(&space.add(&aw, &space.scale(mu, &v))) - 1)
                            .collect(),
                    );
                }
            } else {
                let rest = complement(n, &parts);
                parts.push(rest);
            }
            Ok(normalize(parts))
        }
        SuborbitModel::GlBar | SuborbitModel::SlBarDim2 | SuborbitModel::RankThreeBar => {
            let ds = DeltaSpace::new(field.clone(), d, r)?;
            let n = ds.degree();
            let mut parts: Vec<Vec<usize>> = match model {
                SuborbitModel::GlBar => (1..=r as i64).map(|k| vec![ds.scalar_point(k)]).collect(),
                SuborbitModel::RankThreeBar => {
                    if !(is_prime(r) && (d >= 3 || (d == 2 && r == 2))) {
                        return hypothesis("rank 3 orbit shape needs r prime, and r = 2 when d = 2");
                    }
                    vec![vec![ds.scalar_point(0)], (1..r as i64).map(|k| ds.scalar_point(k)).collect()]
                }
                _ => {
                    if !(d == 2 && r == 2 && q % 2 == 1 && q >= 5) {
                        return hypothesis("SLbar orbit shape needs d = 2, r = 2, p odd and q >= 5");
                    }
                    let space = ds.space();
                    let v = space.unit(1);
                    let w = space.unit(0);
                    let mut odd = Vec::new();
                    let mut even = Vec::new();
                    for k in 1..q as i64 - 1 {
                        let lw = space.scale(field.lambda_pow(k), &w);
                        for mu in 0..q as u32 {
                            let x = ds.point(&space.add(&lw, &space.scale(mu, &v)));
                            if k % 2 == 1 { odd.push(x) } else { even.push(x) }
                        }
                    }
                    vec![vec![ds.scalar_point(1)], vec![ds.scalar_point(2)], odd, even]
                }
            };
            if model != SuborbitModel::SlBarDim2 {
                let rest = complement(n, &parts);
                parts.push(rest);
            }
            Ok(normalize(parts))
        }
    }
}

/// One group of the family scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanRecord {
    pub spec: String,
    pub degree: usize,
    pub order: u128,
    pub rank: usize,
    pub subdegrees: Vec<usize>,
    pub predicate: FamilyPredicate,
    /// Predicate verdict equals the computed rank test; `None` outside scope.
    pub agrees: Option<bool>,
    /// Each applicable orbit model and whether it matched the stabilizer orbits.
    pub suborbit_checks: Vec<(String, bool)>,
}

fn scan_context(d: usize, q: u64, r: u64) -> Result<Vec<ScanRecord>> {
    let ctx = FamilyContext::new(d, q, r)?;
    let field = ctx.field().clone();
    let p = field.p() as u64;
    let gl_mask = ctx.quotient.closure(&[ctx.quotient.element(CosetTag { delta: 1, phi: 0 })]);
    let mut out = Vec::new();
    for sub in ctx.quotient.subgroups() {
        let fg = ctx.build(&sub.generators)?;
        let suborbits = fg.group.suborbits()?;
        let rank = suborbits.len();
        let mut subdegrees: Vec<usize> = suborbits.iter().map(Vec::len).collect();
        subdegrees.sort_unstable();
        let predicate = fg.predicate();
        let mut models = Vec::new();
        if sub.order() == 1 {
            if d >= 3 {
                models.push(SuborbitModel::GlBar);
            } else if r == 2 && p % 2 == 1 && q >= 5 {
                models.push(SuborbitModel::SlBarDim2);
            }
            if r == q - 1 {
                models.push(SuborbitModel::SlVectors);
            }
        }
        if sub.mask == gl_mask {
            models.push(SuborbitModel::GlBar);
            if r == q - 1 {
                models.push(SuborbitModel::GlVectors);
            }
        }
        if predicate.rank3 == Some(true) {
            models.push(SuborbitModel::RankThreeBar);
        }
        models.dedup();
        let mut checks = Vec::new();
        for m in models {
            let expected = expected_suborbits(m, &field, d, r)?;
            checks.push((m.name().to_string(), expected == suborbits));
        }
        out.push(ScanRecord {
            spec: fg.spec.to_string(),
            degree: fg.group.degree(),
            order: fg.order(),
            rank,
            subdegrees,
            agrees: predicate.rank3.map(|b| b == (rank == 3)),
            predicate,
            suborbit_checks: checks,
        });
    }
    Ok(out)
}

/// Every `(d, q, r)` of the grid with every selector subgroup, in grid order.
pub fn scan_grid(dims: &[usize], qs: &[u64], exec: Execution) -> Result<Vec<ScanRecord>> {
    let mut params = Vec::new();
    for &d in dims {
        for &q in qs {
            for r in 2..q {
                if (q - 1) % r == 0 {
                    params.push((d, q, r));
                }
            }
        }
    }
    let results = exec.map(params, |(d, q, r)| scan_context(d, q, r));
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tags(s: &[&str]) -> Vec<CosetTag> {
        s.iter().map(|t| t.parse().unwrap()).collect()
    }

    #[test]
    fn spec_round_trip() {
        let spec: FamilySpec = "d=3,q=4,r=3,gens=delta,phi".parse().unwrap();
        assert_eq!((spec.d, spec.p, spec.f, spec.r), (3, 2, 2, 3));
        assert_eq!(spec.selectors, tags(&["delta", "phi"]));
        assert_eq!(spec.to_string(), "d=3,q=4,r=3,gens=delta,phi");
        assert_eq!(spec.to_string().parse::<FamilySpec>().unwrap(), spec);
        let none: FamilySpec = "d=2,q=5,r=2,gens=none".parse().unwrap();
        assert!(none.selectors.is_empty());
        let t: CosetTag = "delta^2*phi".parse().unwrap();
        assert_eq!(t, CosetTag { delta: 2, phi: 1 });
        assert!("d=3,q=4,r=2".parse::<FamilySpec>().is_err());
        assert!("d=3,q=4,r=3,gens=phi^2".parse::<FamilySpec>().is_err());
        assert!("d=3,q=6,r=5".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn delta_degrees_and_orders() {
        let g = delta_action(&"d=3,q=4,r=3,gens=delta,phi".parse().unwrap()).unwrap();
        assert_eq!((g.degree(), g.order()), (63, 362_880));
        let g = delta_action(&"d=3,q=4,r=3,gens=phi".parse().unwrap()).unwrap();
        assert_eq!(g.order(), 120_960);
        let g = delta_action(&"d=2,q=7,r=2,gens=delta".parse().unwrap()).unwrap();
        assert_eq!((g.degree(), g.order()), (16, 672));
        let g = delta_action(&"d=2,q=5,r=2,gens=none".parse().unwrap()).unwrap();
        assert_eq!((g.degree(), g.order()), (12, 60));
    }

    #[test]
    fn scalar_kernel_on_line_blocks() {
        for (d, q, r) in [(3, 4, 3), (2, 7, 2), (2, 9, 4)] {
            let ctx = FamilyContext::new(d, q, r).unwrap();
            let g = ctx.build(&[CosetTag { delta: 1, phi: 0 }]).unwrap();
            let blocks = ctx.delta_space.line_blocks().unwrap();
            assert!(blocks.is_invariant_under(&g.group));
            assert_eq!(blocks.kernel(&g.group).unwrap().order(), r as u128);
        }
    }

    #[test]
    fn quotient_law() {
        let q = SelectorQuotient::new(3, 2, 2, 3);
        assert_eq!((q.g, q.order()), (3, 6));
        let subs = q.subgroups();
        // S_3 has six subgroups.
        assert_eq!(subs.len(), 6);
        let d = q.element(CosetTag { delta: 1, phi: 0 });
        let phi = q.element(CosetTag { delta: 0, phi: 1 });
        // φ δ φ^{-1} = δ^{p^{f-1}} = δ^2.
        assert_eq!(q.mul(q.mul(phi, d), phi), q.element(CosetTag { delta: 2, phi: 0 }));
    }

    #[test]
    fn predicate_examples() {
        let p = rank3_family_predicate(&"d=3,q=4,r=3,gens=delta,phi".parse().unwrap()).unwrap();
        assert_eq!(p.rank3, Some(true));
        assert!(p.semiprimitive_not_innately);
        let p = rank3_family_predicate(&"d=3,q=4,r=3,gens=delta".parse().unwrap()).unwrap();
        assert_eq!(p.rank3, Some(false));
        let p = rank3_family_predicate(&"d=2,q=7,r=2,gens=delta".parse().unwrap()).unwrap();
        assert_eq!(p.rank3, Some(true));
        let p = rank3_family_predicate(&"d=2,q=4,r=3".parse().unwrap()).unwrap();
        assert_eq!(p.rank3, None);
    }

    #[test]
    fn orbit_models_match_small_cases() {
        let f7 = Field::new(7, 1).unwrap();
        let sizes = |parts: Vec<Vec<usize>>| {
            let mut s: Vec<usize> = parts.iter().map(Vec::len).collect();
            s.sort_unstable();
            s
        };
        assert_eq!(sizes(expected_suborbits(SuborbitModel::GlBar, &f7, 2, 2).unwrap()), vec![1, 1, 14]);
        assert_eq!(sizes(expected_suborbits(SuborbitModel::SlBarDim2, &f7, 2, 2).unwrap()), vec![1, 1, 7, 7]);
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(sizes(expected_suborbits(SuborbitModel::GlBar, &f4, 3, 3).unwrap()), vec![1, 1, 1, 60]);
        let sl = delta_action(&"d=2,q=7,r=2".parse().unwrap()).unwrap();
        assert_eq!(sl.suborbits().unwrap(), expected_suborbits(SuborbitModel::SlBarDim2, &f7, 2, 2).unwrap());
        let gl = delta_action(&"d=2,q=7,r=2,gens=delta".parse().unwrap()).unwrap();
        assert_eq!(gl.suborbits().unwrap(), expected_suborbits(SuborbitModel::GlBar, &f7, 2, 2).unwrap());
        assert!(expected_suborbits(SuborbitModel::SlBarDim2, &f4, 2, 3).is_err());
    }

    #[test]
    fn square_determinant_selector_has_rank_four() {
        let ctx = FamilyContext::new(2, 5, 2).unwrap();
        let fg = ctx.build(&[CosetTag { delta: 2, phi: 0 }]).unwrap();
        assert!(!fg.inside_sigma && fg.inside_sigma_square);
        let g = &fg.group;
        assert_eq!(crate::perm::oracle::orbits_on_pairs(g.degree(), g.generators()), 4);
        assert_eq!(fg.predicate().rank3, Some(false));
    }

    #[test]
    fn small_scan_agrees() {
        let records = scan_grid(&[2, 3], &[4, 5], Execution::default()).unwrap();
        assert!(!records.is_empty());
        for rec in &records {
            assert_ne!(rec.agrees, Some(false), "{rec:?}");
            assert!(rec.suborbit_checks.iter().all(|(_, ok)| *ok), "{rec:?}");
        }
    }
}
