//! The rank 3 pipeline: block system, kernel, induced actions, K_(B),
//! L = O_p(K), and the four-way classification of rank 3 imprimitive
//! groups whose block group is affine.

mod pairs;
mod report;

pub use pairs::{block_pair_check, block_pair_check_on, pointwise_kernel_check, BlockPairCheck};
pub use report::{
    ClassEvidence, Forensics, FrobeniusKernel, Imprimitivity, InducedAction, Rank3Class,
    Rank3Report, RegularNormalEvidence,
};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linear::space::{classical_order, LinearKind};
use crate::numtheory::{as_prime_power, gcd, is_prime};
use crate::perm::{centralizer, nontrivial_block_systems_rank3, BlockSystem, PermGroup};
use crate::structure::normal::is_primitive;
use crate::structure::{
    automorphism_orbit_count, all_normal_subgroups, is_frobenius_with_cyclic_complement,
    socle_and_type, ClassClosures, SmallGroupTable, SocleType, StructureFlags,
    DEFAULT_SEARCH_BUDGET,
};

/// Turns a capacity error into a recorded skip.
fn soft<T>(r: Result<T>, what: &str, skips: &mut Vec<String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_capacity() => {
            skips.push(format!("{what}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub fn analyze(group: &PermGroup, cap: u128) -> Result<Rank3Report> {
    analyze_with(group, cap, Execution::default())
}

/// Full report for a transitive group. Groups that are not rank 3, are
/// primitive, or whose block group is not affine get class
/// `not-applicable` with the reason in the evidence.
pub fn analyze_with(group: &PermGroup, cap: u128, exec: Execution) -> Result<Rank3Report> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let mut skips = Vec::new();
    let subdegrees = group.subdegrees()?;
    let rank = subdegrees.len();
    let closures = soft(ClassClosures::compute(group, cap), "class closures of G", &mut skips)?;
    let flags = match &closures {
        Some(cc) => Some(StructureFlags {
            semiregular: group.is_semiregular(),
            semiprimitive: cc.is_semiprimitive(),
            quasiprimitive: cc.is_quasiprimitive(),
            innately_transitive: cc.is_innately_transitive(),
            primitive: is_primitive(group)?,
        }),
        None => None,
    };
    let mut report = Rank3Report {
        degree: group.degree(),
        order: group.order(),
        rank,
        subdegrees,
        flags,
        imprimitivity: None,
        class: Rank3Class::NotApplicable,
        evidence: ClassEvidence::default(),
        capacity_skips: Vec::new(),
    };
    if rank != 3 {
        report.evidence.out_of_scope = Some(format!("rank {rank}, not 3"));
        report.capacity_skips = skips;
        return Ok(report);
    }
    let systems = nontrivial_block_systems_rank3(group)?;
    let Some(system) = systems.first() else {
        report.evidence.out_of_scope = Some("primitive".into());
        report.capacity_skips = skips;
        return Ok(report);
    };
    let pieces = imprimitivity(group, system, systems.len(), cap, &mut skips)?;
    if systems.len() > 1 && pieces.data.block_group.two_transitive && pieces.data.block_action.two_transitive {
        return Err(Error::InvalidArgument(format!(
            "{} block systems although both induced actions are 2-transitive",
            systems.len()
        )));
    }
    report.evidence = classify(group, &pieces, closures.as_ref(), cap, exec, &mut skips)?;
    report.class = decide(&report.evidence);
    report.imprimitivity = Some(pieces.data);
    report.capacity_skips = skips;
    Ok(report)
}

/// Intermediate groups of the pipeline.
struct Pieces {
    data: Imprimitivity,
    kernel: PermGroup,
    l: Option<PermGroup>,
}

fn induced(g: &PermGroup, cap: u128, what: &str, skips: &mut Vec<String>) -> Result<InducedAction> {
    let socle = soft(socle_and_type(g, false, cap), what, skips)?;
    Ok(InducedAction {
        degree: g.degree(),
        order: g.order(),
        two_transitive: g.rank()? == 2,
        socle_type: socle.as_ref().map(|s| s.kind),
        socle_order: socle.as_ref().map(|s| s.socle.order()),
    })
}

fn is_elementary_abelian(g: &PermGroup, p: u64) -> bool {
    g.is_abelian() && g.generators().iter().all(|x| x.order() == p)
}

fn imprimitivity(
    group: &PermGroup,
    system: &BlockSystem,
    system_count: usize,
    cap: u128,
    skips: &mut Vec<String>,
) -> Result<Pieces> {
    let b0 = system.block_of(0);
    let block = system.block(b0).to_vec();
    let other = (0..system.block_count()).find(|&i| i != b0).expect("nontrivial system");
    let all_cells: Vec<usize> = (0..system.block_count()).collect();
    let kernel = system.kernel(group)?;
    let pointwise = system.stabilizer(group, &all_cells, &block)?;
    let other_point = system.block(other)[0];
    let block_group = system.action_on_block(group, b0)?;
    let block_group_info = induced(&block_group, cap, "socle of the block group", skips)?;
    let block_action_info = induced(&system.block_action(group), cap, "socle of the block action", skips)?;
    let affine_prime = match block_group_info.socle_type {
        Some(SocleType::Affine) => as_prime_power(block.len() as u64).map(|(p, _)| p),
        _ => None,
    };
    let mut l = None;
    let mut centralizer_equals_l = None;
    if let Some(p) = affine_prime {
        let kc = soft(ClassClosures::compute(&kernel, cap), "class closures of K", skips)?;
        if let Some(kc) = kc {
            let op = kc.largest_normal_p_subgroup(p)?;
            centralizer_equals_l = soft(centralizer(group, &op, cap), "centralizer of L", skips)?
                .map(|c| c.same_group(&op));
            l = Some(op);
        }
    }
    let data = Imprimitivity {
        block_system_count: system_count,
        block_size: block.len(),
        block_count: system.block_count(),
        first_block: block.iter().map(|x| x + 1).collect(),
        kernel_order: kernel.order(),
        kernel_semiregular: kernel.is_semiregular(),
        kernel_regular_on_block: kernel.restrict_to(&block)?.is_regular(),
        kernel_pointwise_order: pointwise.order(),
        kernel_pointwise_transitive_on_other_block: pointwise.orbit(other_point)?.len() == block.len(),
        block_group: block_group_info,
        block_action: block_action_info,
        affine_prime,
        l_order: l.as_ref().map(PermGroup::order),
        l_elementary_abelian: l.as_ref().zip(affine_prime).map(|(l, p)| is_elementary_abelian(l, p)),
        centralizer_equals_l,
    };
    Ok(Pieces { data, kernel, l })
}

/// `|PSL_d(q)|`.
fn psl_order(d: usize, q: u64, f: u32) -> u128 {
    classical_order(LinearKind::SL, d, q, f) / gcd(d as u64, q - 1) as u128
}

/// Recognises the semiprimitive, not innately transitive shapes: `3.S6`
/// on 18 points, `2.M12` on 24 points, and `r.PSL_d(q)` on the
/// projective points with K of prime order r dividing q − 1.
fn listed_shape(data: &Imprimitivity) -> Option<String> {
    let action = &data.block_action;
    if action.socle_type != Some(SocleType::AlmostSimple) {
        return None;
    }
    let (b, n) = (data.block_size, data.block_count);
    match (b, n, action.order) {
        (3, 6, 720) => return Some("3.S6".into()),
        (2, 12, 95040) => return Some("2.M12".into()),
        _ => {}
    }
    let r = data.kernel_order;
    if r != b as u128 || !is_prime(r as u64) {
        return None;
    }
    for d in 2..=n {
        for q in 2..n as u64 {
            let Some((_, f)) = as_prime_power(q) else { continue };
            let points = (q.pow(d as u32) - 1) / (q - 1);
            if points as usize == n
                && (q - 1) % r as u64 == 0
                && action.socle_order == Some(psl_order(d, q, f))
            {
                return Some(format!("{r}.PSL_{d}({q})"));
            }
            if points as usize > n {
                break;
            }
        }
        if (1u64 << d) - 1 > n as u64 {
            break;
        }
    }
    None
}

fn classify(
    group: &PermGroup,
    pieces: &Pieces,
    closures: Option<&ClassClosures>,
    cap: u128,
    exec: Execution,
    skips: &mut Vec<String>,
) -> Result<ClassEvidence> {
    let data = &pieces.data;
    let mut ev = ClassEvidence::default();
    let Some(p) = data.affine_prime else {
        ev.out_of_scope = Some(match data.block_group.socle_type {
            None => "block group type undetermined".into(),
            Some(_) => "block group is not affine".into(),
        });
        return Ok(ev);
    };
    let kernel = &pieces.kernel;
    ev.clause_c = Some(data.kernel_pointwise_transitive_on_other_block);

    if let Some(cc) = closures {
        let innately = cc.is_innately_transitive();
        let semiprimitive = cc.is_semiprimitive();
        ev.innately_transitive = Some(innately);
        ev.closures_transitive_or_in_kernel = Some(
            cc.closures
                .iter()
                .all(|n| n.is_transitive() || kernel.contains_group(n)),
        );
        if semiprimitive && !innately {
            let minimal = cc.minimal_normal_subgroups();
            ev.kernel_unique_minimal_semiregular = Some(
                minimal.len() == 1 && minimal[0].same_group(kernel) && kernel.is_semiregular(),
            );
            if kernel.order() > 1 {
                ev.listed_semiprimitive_shape = listed_shape(data);
            }
        }
        ev.clause_a = Some(innately || ev.listed_semiprimitive_shape.is_some());
        ev.regular_normal = regular_normal_search(group, cc, kernel, cap, exec, skips)?;
        ev.clause_b = match &ev.regular_normal {
            Some(n) => Some(n.automorphism_orbit_count <= 3),
            None if skips.iter().any(|s| s.starts_with("regular normal")) => None,
            None => Some(false),
        };
    }

    let frobenius = soft(
        is_frobenius_with_cyclic_complement(kernel, p),
        "Frobenius test on K",
        skips,
    )?;
    let block_dimension = as_prime_power(data.block_size as u64).map_or(0, |(_, e)| e);
    let frobenius_kernel = frobenius.flatten().map(|(a, m)| FrobeniusKernel {
        a,
        complement_order: m,
    });
    let self_centralizing = data
        .l_elementary_abelian
        .zip(data.centralizer_equals_l)
        .map(|(e, c)| e && c && pieces.l.as_ref().is_some_and(|l| l.order() > 1));
    let forensics = Forensics {
        kernel_pointwise_nontrivial_intransitive: data.kernel_pointwise_order > 1
            && !data.kernel_pointwise_transitive_on_other_block,
        frobenius_exponent_exceeds_block_dimension: frobenius_kernel
            .as_ref()
            .map(|k| k.a > block_dimension),
        frobenius_kernel,
        block_dimension,
        self_centralizing_elementary_abelian_normal: self_centralizing,
    };
    ev.clause_d = Some(
        forensics.kernel_pointwise_nontrivial_intransitive
            && forensics.frobenius_exponent_exceeds_block_dimension == Some(true)
            && forensics.self_centralizing_elementary_abelian_normal == Some(true),
    );
    ev.forensics = Some(forensics);
    Ok(ev)
}

/// Decision order A, B, C, D. An undetermined clause ahead of the first
/// true one leaves the class undetermined.
fn decide(ev: &ClassEvidence) -> Rank3Class {
    if ev.out_of_scope.is_some() {
        return Rank3Class::NotApplicable;
    }
    for (clause, class) in [
        (ev.clause_a, Rank3Class::A),
        (ev.clause_b, Rank3Class::B),
        (ev.clause_c, Rank3Class::C),
    ] {
        match clause {
            Some(true) => return class,
            Some(false) => {}
            None => return Rank3Class::NotApplicable,
        }
    }
    Rank3Class::D
}

/// Regular normal subgroups among the class closures and their joins
/// with K, falling back to every normal subgroup for small groups. The
/// first one whose automorphism group has at most three orbits wins;
/// otherwise the first one found is reported.
fn regular_normal_search(
    group: &PermGroup,
    cc: &ClassClosures,
    kernel: &PermGroup,
    cap: u128,
    exec: Execution,
    skips: &mut Vec<String>,
) -> Result<Option<RegularNormalEvidence>> {
    let degree = group.degree() as u128;
    let mut candidates: Vec<PermGroup> = Vec::new();
    let consider = |n: PermGroup, out: &mut Vec<PermGroup>| {
        if n.order() == degree && n.is_regular() && !out.iter().any(|m| m.same_group(&n)) {
            out.push(n);
        }
    };
    for c in &cc.closures {
        consider(c.clone(), &mut candidates);
        consider(c.join(kernel)?, &mut candidates);
    }
    if candidates.is_empty() && group.order() <= crate::structure::table::MAX_TABLE_ORDER as u128 {
        for n in all_normal_subgroups(group, cap)? {
            consider(n, &mut candidates);
        }
    }
    let mut first: Option<RegularNormalEvidence> = None;
    let examined = candidates.len();
    for n in candidates {
        let counted = soft(
            SmallGroupTable::from_perm_group(&n)
                .and_then(|t| automorphism_orbit_count(&t, DEFAULT_SEARCH_BUDGET, exec)),
            "regular normal subgroup automorphisms",
            skips,
        )?;
        let Some(c) = counted else { continue };
        let evidence = RegularNormalEvidence {
            order: n.order(),
            shape: c.class,
            automorphism_group_order: c.aut_order,
            automorphism_orbit_count: c.orbit_count,
            automorphism_orbit_sizes: c.orbit_sizes,
            candidates_examined: examined,
        };
        if evidence.automorphism_orbit_count <= 3 {
            return Ok(Some(evidence));
        }
        first.get_or_insert(evidence);
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::examples::{
        build_affine_example, build_extraspecial_holomorph, build_sum_zero_example, AffineExample,
    };
    use crate::linear::family::{CosetTag, FamilyContext};
    use crate::perm::DEFAULT_ENUMERATION_CAP as CAP;

    #[test]
    fn affine_g2_is_class_b() {
        let g = build_affine_example(AffineExample::G2).unwrap();
        let r = analyze(&g, CAP).unwrap();
        assert_eq!(r.block_data(), Some((2, 8)));
        let i = r.imprimitivity.as_ref().unwrap();
        assert_eq!(i.block_group.socle_type, Some(SocleType::Affine));
        assert_eq!(i.block_action.socle_type, Some(SocleType::Affine));
        assert_eq!(r.class, Rank3Class::B);
        let n = r.evidence.regular_normal.as_ref().unwrap();
        assert_eq!((n.order, n.automorphism_orbit_count), (16, 2));
        assert!(r.counting_identities_hold());
        assert!(r.flags.unwrap().semiprimitive);
    }

    #[test]
    fn gamma_family_343() {
        let ctx = FamilyContext::new(3, 4, 3).unwrap();
        let fam = ctx.build(&[CosetTag { delta: 1, phi: 0 }, CosetTag { delta: 0, phi: 1 }]).unwrap();
        let r = analyze(&fam.group, CAP).unwrap();
        let i = r.imprimitivity.as_ref().unwrap();
        assert_eq!((i.block_size, i.block_count, i.kernel_order), (3, 21, 3));
        assert_eq!(i.block_action.socle_type, Some(SocleType::AlmostSimple));
        assert_eq!(i.block_action.socle_order, Some(20160));
        assert_eq!(r.class, Rank3Class::A);
        assert_eq!(r.evidence.listed_semiprimitive_shape.as_deref(), Some("3.PSL_3(4)"));
        assert_eq!(r.evidence.kernel_unique_minimal_semiregular, Some(true));
    }

    #[test]
    fn sum_zero_is_class_c() {
        let g = build_sum_zero_example(2, 2, 3).unwrap();
        let r = analyze(&g, CAP).unwrap();
        assert_eq!(r.rank, 3);
        assert_eq!(r.class, Rank3Class::C);
        assert_eq!(r.evidence.clause_c, Some(true));
    }

    #[test]
    fn holomorph_is_class_b() {
        let h = build_extraspecial_holomorph(3, 1, CAP, Execution::Sequential).unwrap();
        let r = analyze(&h.group, CAP).unwrap();
        assert_eq!(r.subdegrees, vec![1, 2, 24]);
        assert_eq!(r.class, Rank3Class::B);
        let n = r.evidence.regular_normal.as_ref().unwrap();
        assert_eq!(n.automorphism_orbit_count, 3);
        assert_eq!(n.shape, crate::structure::RegularNormalClass::SpecialPExpP);
    }

    #[test]
    fn primitive_and_other_ranks_are_not_applicable() {
        let r = analyze(&PermGroup::symmetric(5), CAP).unwrap();
        assert_eq!(r.class, Rank3Class::NotApplicable);
        let r = analyze(&PermGroup::cyclic(5), CAP).unwrap();
        assert_eq!(r.rank, 5);
        assert_eq!(r.class, Rank3Class::NotApplicable);
    }
}
