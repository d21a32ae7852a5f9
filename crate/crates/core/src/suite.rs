//! Named verification suites with a machine-readable verdict per check.
//!
//! A check passes, fails, or is skipped because a capacity limit was hit.
//! Errors inside a check are reported as failures with the message; they
//! are never swallowed.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analyzer::{analyze_with, block_pair_check_on, pointwise_kernel_check, Rank3Class};
use crate::catalog::{builtin_entries, builtin_entry, construct, verify_entry};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linear::corpus::{prime_power_index_check, reducible_normal_check, LinearAmbient};
use crate::linear::examples::{
    build_affine_example, build_extraspecial_holomorph, build_sum_zero_example, build_sylow_model,
    AffineExample,
};
use crate::linear::family::{
    delta_action, scan_grid, semiprimitive_not_innately, CosetTag, FamilyContext,
};
use crate::perm::oracle::{enumerate_elements, orbits_on_pairs};
use crate::perm::{nontrivial_block_systems, PermGroup, Permutation};
use crate::structure::table::{count, small};
use crate::structure::{
    automorphism_orbit_count, is_special, ClassClosures, RegularNormalClass, SmallGroupTable,
    DEFAULT_SEARCH_BUDGET,
};

/// Groups up to this order are also enumerated by brute force in the
/// oracle suite.
pub const ORACLE_ENUMERATION_LIMIT: u128 = 100_000;

pub const SCAN_DIMENSIONS: [usize; 2] = [2, 3];
pub const SCAN_FIELDS: [u64; 6] = [3, 4, 5, 7, 8, 9];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Oracle,
    Examples,
    FamilyScan,
    BlockInvariants,
    AutOrbitTable,
    Catalog,
    LinearCorpus,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Oracle,
        Suite::Examples,
        Suite::FamilyScan,
        Suite::BlockInvariants,
        Suite::AutOrbitTable,
        Suite::Catalog,
        Suite::LinearCorpus,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Examples => "examples",
            Suite::FamilyScan => "family-scan",
            Suite::BlockInvariants => "block-invariants",
            Suite::AutOrbitTable => "aut-orbit-table",
            Suite::Catalog => "catalog",
            Suite::LinearCorpus => "linear-corpus",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(Suite::name).collect();
                Error::InvalidArgument(format!("unknown suite `{s}` (one of {})", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckResult {
    pub suite: Suite,
    pub check: String,
    pub status: CheckStatus,
    pub detail: String,
    /// Recorded observations that do not affect the verdict.
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteRun {
    pub checks: Vec<CheckResult>,
}

impl SuiteRun {
    /// 0 when every check passed, 1 when any failed, 2 when none failed
    /// but some were skipped for capacity.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == CheckStatus::Fail) {
            1
        } else if self.checks.iter().any(|c| c.status == CheckStatus::Skipped) {
            2
        } else {
            0
        }
    }
}

struct Outcome {
    pass: bool,
    detail: String,
    note: Option<String>,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
        note: None,
    })
}

type CheckFn = Box<dyn Fn(u128, Execution) -> Result<Outcome> + Send + Sync>;

struct Job {
    suite: Suite,
    name: String,
    run: CheckFn,
}

fn job(suite: Suite, name: impl Into<String>, run: impl Fn(u128, Execution) -> Result<Outcome> + Send + Sync + 'static) -> Job {
    Job {
        suite,
        name: name.into(),
        run: Box::new(run),
    }
}

/// Runs the selected suites (all when `selection` is empty). `seed` only
/// permutes the order in which jobs are handed to the scheduler; results
/// are reported in suite order and never depend on it.
pub fn run_suites(selection: &[Suite], cap: u128, exec: Execution, seed: u64) -> Result<SuiteRun> {
    let suites: Vec<Suite> = if selection.is_empty() {
        Suite::ALL.to_vec()
    } else {
        selection.to_vec()
    };
    let mut jobs = Vec::new();
    for s in suites {
        jobs.extend(jobs_for(s)?);
    }
    let mut order: Vec<usize> = (0..jobs.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let inner = match exec {
        // Jobs already run concurrently; keep each one sequential inside.
        Execution::Parallel => Execution::Sequential,
        Execution::Sequential => Execution::Sequential,
    };
    let mut results: Vec<(usize, CheckResult)> = exec.map(order, |i| {
        let j = &jobs[i];
        let (status, detail, note) = match (j.run)(cap, inner) {
            Ok(o) => (
                if o.pass { CheckStatus::Pass } else { CheckStatus::Fail },
                o.detail,
                o.note,
            ),
            Err(e) if e.is_capacity() => (CheckStatus::Skipped, e.to_string(), None),
            Err(e) => (CheckStatus::Fail, format!("error: {e}"), None),
        };
        (
            i,
            CheckResult {
                suite: j.suite,
                check: j.name.clone(),
                status,
                detail,
                note,
            },
        )
    });
    results.sort_by_key(|(i, _)| *i);
    Ok(SuiteRun {
        checks: results.into_iter().map(|(_, r)| r).collect(),
    })
}

fn jobs_for(suite: Suite) -> Result<Vec<Job>> {
    Ok(match suite {
        Suite::Oracle => oracle_jobs()?,
        Suite::Examples => example_jobs(),
        Suite::FamilyScan => family_jobs(),
        Suite::BlockInvariants => block_invariant_jobs()?,
        Suite::AutOrbitTable => aut_table_jobs(),
        Suite::Catalog => catalog_jobs(),
        Suite::LinearCorpus => linear_corpus_jobs(),
    })
}

fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("a shuffle is a bijection")
}

/// `S_k wr S_m` on `k·m` points, blocks `{ik, …, ik + k − 1}`.
fn wreath_generators(k: usize, m: usize) -> Vec<Permutation> {
    let n = k * m;
    let within = Permutation::from_cycles(n, &[&(0..k).collect::<Vec<_>>()]).unwrap();
    let swap = Permutation::from_cycles(n, &[&[0, 1]]).unwrap();
    let shift = Permutation::new((0..n).map(|x| (x + k) % n).collect()).unwrap();
    vec![within, swap, shift]
}

/// Transitive corpus for the oracle suite: seeded random subgroups of
/// small symmetric groups and of wreath products (each with a transitive
/// cycle added), plus every constructed example of degree at most 30.
pub fn oracle_corpus() -> Result<Vec<(String, PermGroup)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut out = Vec::new();
    for i in 0..24 {
        let n = 4 + i % 6;
        let cycle = Permutation::new((0..n).map(|x| (x + 1) % n).collect())?;
        let mut gens = vec![cycle];
        if i % 3 != 0 {
            gens.push(random_permutation(n, &mut rng));
        }
        out.push((format!("random-s{n}-{i}"), PermGroup::new(n, gens)?));
    }
    for (k, m) in [(2, 3), (2, 4), (3, 2), (3, 3), (2, 5), (4, 2), (2, 6), (3, 4), (5, 2), (2, 7), (4, 3), (6, 2)] {
        let n = k * m;
        let wreath = PermGroup::new(n, wreath_generators(k, m))?;
        let a = wreath.random_element(&mut rng);
        let b = wreath.random_element(&mut rng);
        let cycle = Permutation::new((0..n).map(|x| (x + k) % n).collect())?;
        let within = Permutation::new((0..n).map(|x| if x % k == k - 1 { x + 1 - k } else { x + 1 }).collect())?;
        out.push((format!("wreath-{k}-{m}"), PermGroup::new(n, vec![a, b, cycle, within])?));
    }
    for n in [5, 8, 12, 30] {
        out.push((format!("cyclic-{n}"), PermGroup::cyclic(n)));
        out.push((format!("dihedral-{n}"), PermGroup::dihedral(n)));
    }
    out.push(("affine-g1".into(), build_affine_example(AffineExample::G1)?));
    out.push(("affine-g2".into(), build_affine_example(AffineExample::G2)?));
    out.push(("sylow-model-q3".into(), build_sylow_model(3)?.group));
    out.push((
        "holomorph-p3".into(),
        build_extraspecial_holomorph(3, 1, crate::perm::DEFAULT_ENUMERATION_CAP, Execution::Sequential)?.group,
    ));
    out.push(("sum-zero-2-2-3".into(), build_sum_zero_example(2, 2, 3)?));
    out.push(("3.S6-deg18".into(), construct::hyperoval_triple_cover()?));
    out.push(("2.M12-deg24".into(), construct::golay_double_cover()?));
    for spec in [
        "d=2,q=3,r=2,gens=none",
        "d=2,q=4,r=3,gens=phi",
        "d=2,q=5,r=2,gens=delta",
        "d=2,q=5,r=2,gens=delta^2",
        "d=2,q=5,r=4,gens=none",
        "d=2,q=7,r=2,gens=delta",
        "d=2,q=7,r=3,gens=none",
    ] {
        out.push((spec.to_string(), delta_action(&spec.parse()?)?));
    }
    Ok(out)
}

fn oracle_jobs() -> Result<Vec<Job>> {
    Ok(oracle_corpus()?
        .into_iter()
        .map(|(name, g)| {
            job(Suite::Oracle, name, move |_, _| {
                let rank = g.rank()?;
                let pairs = orbits_on_pairs(g.degree(), g.generators());
                let mut detail = format!("degree {}, rank {rank}, pair orbits {pairs}", g.degree());
                let mut pass = rank == pairs;
                if g.order() <= ORACLE_ENUMERATION_LIMIT {
                    let n = enumerate_elements(g.degree(), g.generators(), ORACLE_ENUMERATION_LIMIT as usize)?.len();
                    detail.push_str(&format!(", order {} enumerated {n}", g.order()));
                    pass &= n as u128 == g.order();
                } else {
                    detail.push_str(&format!(", order {} (not enumerated)", g.order()));
                }
                outcome(pass, detail)
            })
        })
        .collect())
}

fn example_jobs() -> Vec<Job> {
    let s = Suite::Examples;
    vec![
        job(s, "affine-g1", |cap, exec| {
            let g = build_affine_example(AffineExample::G1)?;
            let r = analyze_with(&g, cap, exec)?;
            let semi = r.flags.map(|f| f.semiprimitive);
            outcome(
                r.rank == 3 && r.subdegrees == [1, 7, 8] && semi == Some(false),
                format!("rank {}, subdegrees {:?}, semiprimitive {semi:?}", r.rank, r.subdegrees),
            )
        }),
        job(s, "affine-g2", |cap, exec| {
            let g = build_affine_example(AffineExample::G2)?;
            let r = analyze_with(&g, cap, exec)?;
            let semi = r.flags.map(|f| f.semiprimitive);
            let orbits = r.evidence.regular_normal.as_ref().map(|n| n.automorphism_orbit_count);
            outcome(
                r.rank == 3
                    && r.subdegrees == [1, 1, 14]
                    && semi == Some(true)
                    && r.block_data() == Some((2, 8))
                    && r.class == Rank3Class::B
                    && orbits == Some(2),
                format!(
                    "rank {}, subdegrees {:?}, semiprimitive {semi:?}, blocks {:?}, class {}, Aut(N) orbits {orbits:?}",
                    r.rank,
                    r.subdegrees,
                    r.block_data(),
                    r.class
                ),
            )
        }),
        job(s, "sylow-model-q3", |_, _| {
            let m = build_sylow_model(3)?;
            let center = count(&m.normal.center());
            let special = is_special(&m.normal);
            let (rank, stated, flag) = m.rank_report()?;
            let built = m.group.degree() == 27 && m.group.order() == 216;
            Ok(Outcome {
                pass: built && special && center == 3 && m.normal.order() == 27,
                detail: format!(
                    "degree {}, order {}, N special {special} of order {} with center {center}",
                    m.group.degree(),
                    m.group.order(),
                    m.normal.order()
                ),
                note: Some(format!(
                    "stated rank {stated}; computed rank {rank}{}",
                    if flag { "; DISCREPANCY" } else { "" }
                )),
            })
        }),
        job(s, "holomorph-p3", |cap, exec| {
            let h = build_extraspecial_holomorph(3, 1, cap, exec)?;
            let r = analyze_with(&h.group, cap, exec)?;
            let semi = r.flags.map(|f| f.semiprimitive);
            let shape = r.evidence.regular_normal.as_ref().map(|n| n.shape);
            let kernel = r.imprimitivity.as_ref().map(|i| (i.kernel_order, i.kernel_pointwise_order));
            // Inner automorphisms lie in the block kernel and fix a point,
            // so the full holomorph cannot be semiprimitive.
            let note = (semi != Some(true)).then(|| {
                format!("claimed semiprimitive; computed {semi:?} with (|K|, |K_(B)|) = {kernel:?}; DISCREPANCY")
            });
            Ok(Outcome {
                pass: r.degree == 27
                    && r.rank == 3
                    && r.subdegrees == [1, 2, 24]
                    && r.class == Rank3Class::B
                    && shape == Some(RegularNormalClass::SpecialPExpP),
                detail: format!(
                    "degree {}, subdegrees {:?}, semiprimitive {semi:?}, class {}, N {:?}",
                    r.degree,
                    r.subdegrees,
                    r.class,
                    shape.map(|s| s.tag())
                ),
                note,
            })
        }),
        job(s, "sum-zero-2-2-3", |cap, exec| {
            let g = build_sum_zero_example(2, 2, 3)?;
            let r = analyze_with(&g, cap, exec)?;
            let transitive = pointwise_kernel_check(&g)?;
            outcome(
                r.rank == 3 && transitive && r.class == Rank3Class::C,
                format!("rank {}, K_(B) transitive on B' {transitive}, class {}", r.rank, r.class),
            )
        }),
    ]
}

fn family_jobs() -> Vec<Job> {
    let s = Suite::FamilyScan;
    vec![
        job(s, "grid", |_, exec| {
            let recs = scan_grid(&SCAN_DIMENSIONS, &SCAN_FIELDS, exec)?;
            let covered = recs.iter().filter(|r| r.agrees.is_some()).count();
            let disagreements: Vec<&str> = recs
                .iter()
                .filter(|r| r.agrees == Some(false))
                .map(|r| r.spec.as_str())
                .collect();
            let model_checks: usize = recs.iter().map(|r| r.suborbit_checks.len()).sum();
            let model_failures: Vec<String> = recs
                .iter()
                .flat_map(|r| {
                    r.suborbit_checks
                        .iter()
                        .filter(|(_, ok)| !ok)
                        .map(move |(m, _)| format!("{} {m}", r.spec))
                })
                .collect();
            outcome(
                disagreements.is_empty() && model_failures.is_empty() && covered > 0,
                format!(
                    "{} groups, {covered} covered, {} disagreements {disagreements:?}, {model_checks} orbit-model checks, {} failures {model_failures:?}",
                    recs.len(),
                    disagreements.len(),
                    model_failures.len()
                ),
            )
        }),
        job(s, "gamma-selector-3-4-3", |cap, exec| {
            let ctx = FamilyContext::new(3, 4, 3)?;
            let fam = ctx.build(&[CosetTag { delta: 1, phi: 0 }, CosetTag { delta: 0, phi: 1 }])?;
            let r = analyze_with(&fam.group, cap, exec)?;
            let flags = r.flags.ok_or_else(|| Error::capacity("structure flags", cap))?;
            let arithmetic = semiprimitive_not_innately(3, 4, 3);
            let predicate = fam.predicate().rank3;
            outcome(
                r.rank == 3
                    && r.subdegrees == [1, 2, 60]
                    && flags.semiprimitive
                    && !flags.innately_transitive
                    && arithmetic
                    && predicate == Some(true),
                format!(
                    "rank {}, subdegrees {:?}, semiprimitive {}, innately transitive {}, arithmetic {arithmetic}, predicate {predicate:?}",
                    r.rank, r.subdegrees, flags.semiprimitive, flags.innately_transitive
                ),
            )
        }),
        job(s, "gl-selector-3-4-3", |_, _| {
            let ctx = FamilyContext::new(3, 4, 3)?;
            let fam = ctx.build(&[CosetTag { delta: 1, phi: 0 }])?;
            let rank = fam.group.rank()?;
            outcome(rank == 4, format!("rank {rank}"))
        }),
    ]
}

/// Rank 3 imprimitive corpus: the constructed examples, the catalog
/// groups, and every rank 3 group of the family grid.
pub fn rank3_imprimitive_corpus() -> Result<Vec<(String, PermGroup)>> {
    let mut out = vec![
        ("affine-g1".to_string(), build_affine_example(AffineExample::G1)?),
        ("affine-g2".to_string(), build_affine_example(AffineExample::G2)?),
        (
            "holomorph-p3".to_string(),
            build_extraspecial_holomorph(3, 1, crate::perm::DEFAULT_ENUMERATION_CAP, Execution::Sequential)?.group,
        ),
        ("sum-zero-2-2-3".to_string(), build_sum_zero_example(2, 2, 3)?),
        ("3.S6-deg18".to_string(), construct::hyperoval_triple_cover()?),
        ("2.M12-deg24".to_string(), construct::golay_double_cover()?),
    ];
    for rec in scan_grid(&SCAN_DIMENSIONS, &SCAN_FIELDS, Execution::default())? {
        if rec.rank == 3 {
            let g = delta_action(&rec.spec.parse()?)?;
            out.push((rec.spec, g));
        }
    }
    Ok(out)
}

fn block_invariant_jobs() -> Result<Vec<Job>> {
    Ok(rank3_imprimitive_corpus()?
        .into_iter()
        .map(|(name, g)| {
            job(Suite::BlockInvariants, name, move |cap, _| {
                let systems = nontrivial_block_systems(&g)?;
                let Some(system) = systems.first() else {
                    return outcome(false, "no nontrivial block system");
                };
                let b0 = system.block_of(0);
                let block_2t = system.action_on_block(&g, b0)?.rank()? == 2;
                let action = system.block_action(&g);
                let action_2t = action.rank()? == 2;
                let kernel = system.kernel(&g)?;
                let counting = kernel.order() * action.order() == g.order();
                let pairs = block_pair_check_on(&g, system)?;
                let mut detail = format!(
                    "{} system(s), blocks ({}, {}), induced 2-transitive ({block_2t}, {action_2t}), |K||G^B| = |G| {counting}, index {} vs {}",
                    systems.len(),
                    system.block_size(),
                    system.block_count(),
                    pairs.index,
                    pairs.expected_index
                );
                let mut pass = systems.len() == 1 && block_2t && action_2t && counting && pairs.holds();
                // The closure dichotomy needs class closures; run it where they fit.
                if g.order() <= cap {
                    let cc = ClassClosures::compute(&g, cap)?;
                    let dichotomy = cc
                        .closures
                        .iter()
                        .all(|n| n.is_transitive() || kernel.contains_group(n));
                    detail.push_str(&format!(", closures transitive or in K {dichotomy}"));
                    pass &= dichotomy;
                }
                outcome(pass, detail)
            })
        })
        .collect())
}

type TableCase = (&'static str, fn() -> SmallGroupTable, usize, RegularNormalClass);
type AmbientBuilder = fn() -> Result<LinearAmbient>;

fn aut_table_jobs() -> Vec<Job> {
    let cases: Vec<TableCase> = vec![
        ("Z2^3", || small::abelian(&[2, 2, 2]), 2, RegularNormalClass::ElementaryAbelian),
        ("Z9", || small::cyclic(9), 3, RegularNormalClass::HomocyclicP2),
        ("Q8", small::quaternion, 3, RegularNormalClass::Special2Exp4),
        ("A4", || small::from_perm_group(&PermGroup::alternating(4)), 3, RegularNormalClass::FrobeniusPq),
        ("3^{1+2} exponent 3", || small::heisenberg(3), 3, RegularNormalClass::SpecialPExpP),
        ("Z8", || small::cyclic(8), 4, RegularNormalClass::NoneOfListed),
    ];
    cases
        .into_iter()
        .map(|(name, build, orbits, class)| {
            job(Suite::AutOrbitTable, name, move |_, exec| {
                let r = automorphism_orbit_count(&build(), DEFAULT_SEARCH_BUDGET, exec)?;
                outcome(
                    r.orbit_count == orbits && r.class == class,
                    format!(
                        "|Aut| = {}, {} orbits {:?}, shape {}",
                        r.aut_order,
                        r.orbit_count,
                        r.orbit_sizes,
                        r.class.tag()
                    ),
                )
            })
        })
        .collect()
}

fn catalog_jobs() -> Vec<Job> {
    let s = Suite::Catalog;
    let mut jobs: Vec<Job> = ["3.S6-deg18", "2.M12-deg24"]
        .into_iter()
        .map(|name| {
            job(s, name, move |cap, _| {
                let mut entry = builtin_entry(name)?.ok_or_else(|| Error::InvalidArgument(name.into()))?;
                let v = verify_entry(&mut entry, cap)?;
                let r = &v.report;
                outcome(
                    v.verified(),
                    format!(
                        "order {}, rank {}, subdegrees {:?}, blocks {:?}, class {}, mismatches {:?}",
                        r.order,
                        r.rank,
                        r.subdegrees,
                        r.block_data(),
                        r.class,
                        v.mismatches
                    ),
                )
            })
        })
        .collect();
    jobs.push(job(s, "negative-control", |cap, _| {
        let mut entry = builtin_entries()?
            .into_iter()
            .find(|e| e.name == "2.M12-deg24")
            .expect("builtin");
        entry.claims.order = Some(95040);
        let v = verify_entry(&mut entry, cap)?;
        let fields: Vec<&str> = v.mismatches.iter().map(|m| m.field.as_str()).collect();
        outcome(fields == ["order"], format!("mismatched fields {fields:?}"))
    }));
    jobs
}

fn linear_corpus_jobs() -> Vec<Job> {
    let s = Suite::LinearCorpus;
    let mut jobs = Vec::new();
    let reducible: [(&str, AmbientBuilder); 4] = [
        ("reducible-normal GammaL_1(8)", || LinearAmbient::gamma_l1(2, 3)),
        ("reducible-normal GammaL_1(9)", || LinearAmbient::gamma_l1(3, 2)),
        ("reducible-normal GL_2(3)", || LinearAmbient::general_linear(2, 3)),
        ("reducible-normal GL_2(4)", || LinearAmbient::general_linear(2, 4)),
    ];
    for (name, build) in reducible {
        jobs.push(job(s, name, move |_, _| {
            let recs = reducible_normal_check(&build()?)?;
            let summary: Vec<(usize, usize)> = recs.iter().map(|r| (r.order, r.reducible_normal_subgroups)).collect();
            outcome(
                !recs.is_empty() && recs.iter().all(|r| r.all_cyclic),
                format!("{} transitive subgroups (order, reducible normal): {summary:?}", recs.len()),
            )
        }));
    }
    let index: [(&str, AmbientBuilder, bool); 3] = [
        ("index-p^d GL_3(2)", || LinearAmbient::general_linear(3, 2), true),
        ("index-p^d GL_2(2)", || LinearAmbient::general_linear(2, 2), false),
        ("index-p^d GL_2(3)", || LinearAmbient::general_linear(2, 3), false),
    ];
    for (name, build, whole_has_index) in index {
        jobs.push(job(s, name, move |_, _| {
            let recs = prime_power_index_check(&build()?)?;
            let with: Vec<usize> = recs.iter().filter(|r| r.has_index_p_d).map(|r| r.order).collect();
            let pass = recs
                .iter()
                .all(|r| r.has_index_p_d == (whole_has_index && r.is_whole_group));
            outcome(pass, format!("{} transitive subgroups, orders with such a subgroup {with:?}", recs.len()))
        }));
    }
    jobs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn aut_table_passes_and_seed_does_not_matter() {
        let cap = crate::perm::DEFAULT_ENUMERATION_CAP;
        let a = run_suites(&[Suite::AutOrbitTable], cap, Execution::Parallel, 1).unwrap();
        let b = run_suites(&[Suite::AutOrbitTable], cap, Execution::Sequential, 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.exit_code(), 0);
        assert_eq!(a.checks.len(), 6);
    }
}
