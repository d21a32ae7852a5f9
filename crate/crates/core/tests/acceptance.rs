//! Acceptance criteria, one PASS/FAIL line each. All comparisons are exact
//! (integers, booleans, class tags); each criterion has a wall-clock limit
//! and exceeding it is a failure.
//!
//! A criterion listed in `UNATTAINABLE` is evaluated like every other one
//! and printed as FAIL; the run only fails if it fails in any other way
//! than the documented one.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rank3kit::analyzer::{analyze_with, pointwise_kernel_check, Rank3Class, Rank3Report};
use rank3kit::catalog::{builtin_entry, verify_entry};
use rank3kit::exec::Execution;
use rank3kit::linear::examples::{
    build_affine_example, build_extraspecial_holomorph, build_sum_zero_example, build_sylow_model,
    AffineExample,
};
use rank3kit::linear::family::{scan_grid, semiprimitive_not_innately, CosetTag, FamilyContext};
use rank3kit::perm::DEFAULT_ENUMERATION_CAP as CAP;
use rank3kit::structure::table::count;
use rank3kit::structure::{is_semiprimitive, is_special, RegularNormalClass};
use rank3kit::suite::{oracle_corpus, run_suites, CheckStatus, Suite, SCAN_DIMENSIONS, SCAN_FIELDS};
use rank3kit::Result;

const EXEC: Execution = Execution::Parallel;

/// Named sub-checks of one criterion, plus free-form observations.
#[derive(Default)]
struct Verdict {
    checks: Vec<(String, bool)>,
    notes: Vec<String>,
}

impl Verdict {
    fn check(&mut self, name: impl Into<String>, ok: bool) -> &mut Self {
        self.checks.push((name.into(), ok));
        self
    }

    fn note(&mut self, s: impl Into<String>) -> &mut Self {
        self.notes.push(s.into());
        self
    }

    fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Result<Verdict>,
}

/// `(criterion, failing sub-check, analysis)`.
const UNATTAINABLE: &[(u32, &str, &str)] = &[(
    7,
    "semiprimitive",
    "Hol(N) = N:Aut(N) with Aut(N) = Inn(N):GSp_2(3); Inn(N) lies in the block kernel K and fixes \
     the identity, so |K| = 27 with |K_(B)| = 9 and K is neither transitive nor semiregular. The \
     complement N:GSp_2(3) is semiprimitive but has rank 4 (tests/constructions.rs)",
)];

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn flags(r: &Rank3Report) -> (Option<bool>, Option<bool>) {
    (r.flags.map(|f| f.semiprimitive), r.flags.map(|f| f.innately_transitive))
}

fn suite_verdict(s: Suite) -> Result<Verdict> {
    let run = run_suites(&[s], CAP, EXEC, 0)?;
    let mut v = Verdict::default();
    for c in &run.checks {
        v.check(format!("{}: {}", c.check, c.detail), c.status == CheckStatus::Pass);
        if let Some(n) = &c.note {
            v.note(format!("{}: {n}", c.check));
        }
    }
    v.check(format!("{} checks ran", run.checks.len()), !run.checks.is_empty());
    Ok(v)
}

fn oracle() -> Result<Verdict> {
    let corpus = oracle_corpus()?;
    let mut v = suite_verdict(Suite::Oracle)?;
    v.check(format!("corpus size {} >= 50", corpus.len()), corpus.len() >= 50);
    let max_degree = corpus.iter().map(|(_, g)| g.degree()).max().unwrap_or(0);
    v.check(format!("max degree {max_degree} <= 30"), max_degree <= 30);
    v.check("all transitive", corpus.iter().all(|(_, g)| g.is_transitive()));
    Ok(v)
}

fn affine_pair() -> Result<Verdict> {
    let mut v = Verdict::default();
    for (which, semi, subdegrees) in [
        (AffineExample::G1, false, vec![1, 7, 8]),
        (AffineExample::G2, true, vec![1, 1, 14]),
    ] {
        let g = build_affine_example(which)?;
        let rank = g.rank()?;
        let s = is_semiprimitive(&g, CAP)?;
        let sub = g.subdegrees()?;
        v.check(format!("{which:?} rank {rank} = 3"), rank == 3);
        v.check(format!("{which:?} semiprimitive {s} = {semi}"), s == semi);
        v.check(format!("{which:?} subdegrees {sub:?} = {subdegrees:?}"), sub == subdegrees);
    }
    Ok(v)
}

fn family_scan() -> Result<Verdict> {
    let recs = scan_grid(&SCAN_DIMENSIONS, &SCAN_FIELDS, EXEC)?;
    let mut v = Verdict::default();
    let covered = recs.iter().filter(|r| r.agrees.is_some()).count();
    let disagreements: Vec<&str> = recs.iter().filter(|r| r.agrees == Some(false)).map(|r| r.spec.as_str()).collect();
    let models: usize = recs.iter().map(|r| r.suborbit_checks.len()).sum();
    let model_failures = recs.iter().flat_map(|r| &r.suborbit_checks).filter(|(_, ok)| !ok).count();
    v.check(format!("{} groups, {covered} covered by the criteria", recs.len()), covered > 0);
    v.check(format!("disagreements {disagreements:?}"), disagreements.is_empty());
    v.check(format!("{models} orbit-model instances, {model_failures} mismatches"), models > 0 && model_failures == 0);
    v.note(format!("{} outside the covered parameter shapes", recs.len() - covered));
    Ok(v)
}

fn family_343() -> Result<Verdict> {
    let ctx = FamilyContext::new(3, 4, 3)?;
    let gamma = ctx.build(&[CosetTag { delta: 1, phi: 0 }, CosetTag { delta: 0, phi: 1 }])?;
    let r = analyze_with(&gamma.group, CAP, EXEC)?;
    let (semi, innate) = flags(&r);
    let arithmetic = semiprimitive_not_innately(3, 4, 3);
    let mut v = Verdict::default();
    v.check(format!("degree {} = 63", r.degree), r.degree == 63)
        .check(format!("rank {} = 3", r.rank), r.rank == 3)
        .check(format!("subdegrees {:?} = [1, 2, 60]", r.subdegrees), r.subdegrees == [1, 2, 60])
        .check(format!("semiprimitive {semi:?}"), semi == Some(true))
        .check(format!("innately transitive {innate:?}"), innate == Some(false))
        .check(format!("arithmetic criterion {arithmetic} agrees with predicates"), arithmetic && semi == Some(true) && innate == Some(false))
        .check(format!("rank predicate {:?}", gamma.predicate().rank3), gamma.predicate().rank3 == Some(true));
    let gl = ctx.build(&[CosetTag { delta: 1, phi: 0 }])?;
    let rank = gl.group.rank()?;
    v.check(format!("GL selector rank {rank} = 4"), rank == 4);
    Ok(v)
}

fn catalog() -> Result<Verdict> {
    let mut v = Verdict::default();
    for (name, order, subdegrees, blocks) in [
        ("3.S6-deg18", 2160u128, vec![1, 2, 15], (3, 6)),
        ("2.M12-deg24", 190_080, vec![1, 1, 22], (2, 12)),
    ] {
        let mut entry = builtin_entry(name)?.expect("builtin");
        let res = verify_entry(&mut entry, CAP)?;
        let r = &res.report;
        let (semi, innate) = flags(r);
        v.check(format!("{name} verified, mismatches {:?}", res.mismatches), res.verified() && entry.is_verified())
            .check(format!("{name} order {}", r.order), r.order == order)
            .check(format!("{name} rank {}", r.rank), r.rank == 3)
            .check(format!("{name} subdegrees {:?}", r.subdegrees), r.subdegrees == subdegrees)
            .check(format!("{name} blocks {:?}", r.block_data()), r.block_data() == Some(blocks))
            .check(format!("{name} class {}", r.class), r.class == Rank3Class::A)
            .check(format!("{name} semiprimitive {semi:?}, innately transitive {innate:?}"), semi == Some(true) && innate == Some(false));
    }
    Ok(v)
}

fn aut_table() -> Result<Verdict> {
    let mut v = suite_verdict(Suite::AutOrbitTable)?;
    let n = v.checks.len() - 1;
    v.check(format!("{n} table rows = 6"), n == 6);
    Ok(v)
}

fn holomorph() -> Result<Verdict> {
    let h = build_extraspecial_holomorph(3, 1, CAP, EXEC)?;
    let r = analyze_with(&h.group, CAP, EXEC)?;
    let (semi, _) = flags(&r);
    let shape = r.evidence.regular_normal.as_ref().map(|n| n.shape);
    let mut v = Verdict::default();
    v.check(format!("degree {} = 27", r.degree), r.degree == 27)
        .check(format!("rank {} = 3", r.rank), r.rank == 3)
        .check(format!("subdegrees {:?} = [1, 2, 24]", r.subdegrees), r.subdegrees == [1, 2, 24])
        .check("semiprimitive", semi == Some(true))
        .check(format!("class {} = B", r.class), r.class == Rank3Class::B)
        .check(format!("N shape {:?}", shape.map(|s| s.tag())), shape == Some(RegularNormalClass::SpecialPExpP));
    if let Some(i) = &r.imprimitivity {
        v.note(format!(
            "computed semiprimitive {semi:?}: |K| = {}, K semiregular {}, |K_(B)| = {}",
            i.kernel_order, i.kernel_semiregular, i.kernel_pointwise_order
        ));
    }
    Ok(v)
}

fn sylow() -> Result<Verdict> {
    let m = build_sylow_model(3)?;
    let center = count(&m.normal.center());
    let (rank, stated, differs) = m.rank_report()?;
    let mut v = Verdict::default();
    v.check(format!("degree {} = 27", m.group.degree()), m.group.degree() == 27)
        .check(format!("order {} = 216", m.group.order()), m.group.order() == 216)
        .check(format!("|N| = {}", m.normal.order()), m.normal.order() == 27)
        .check("N special", is_special(&m.normal))
        .check(format!("|Z(N)| = {center}"), center == 3)
        .check("discrepancy flag matches the computed rank", differs == (rank != stated));
    v.note(format!(
        "stated rank {stated}; computed rank {rank}{}",
        if differs { "; DISCREPANCY" } else { "" }
    ));
    Ok(v)
}

fn sum_zero() -> Result<Verdict> {
    let g = build_sum_zero_example(2, 2, 3)?;
    let r = analyze_with(&g, CAP, EXEC)?;
    let k = pointwise_kernel_check(&g)?;
    let mut v = Verdict::default();
    v.check(format!("rank {} = 3", r.rank), r.rank == 3)
        .check(format!("K_(B) transitive on another block: {k}"), k)
        .check(format!("class {} = C", r.class), r.class == Rank3Class::C);
    Ok(v)
}

fn block_invariants() -> Result<Verdict> {
    suite_verdict(Suite::BlockInvariants)
}

fn linear_corpus() -> Result<Verdict> {
    suite_verdict(Suite::LinearCorpus)
}

fn main() -> ExitCode {
    // Integration tests are also run with `--list` etc. by some tools.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let criteria = [
        Criterion { id: 1, title: "oracle equivalence of rank and order", limit: secs(120), run: oracle },
        Criterion { id: 2, title: "affine pair G1/G2 rank, semiprimitivity, subdegrees", limit: secs(5), run: affine_pair },
        Criterion { id: 3, title: "family grid: rank criterion vs computed rank, orbit models", limit: secs(900), run: family_scan },
        Criterion { id: 4, title: "(d,q,r) = (3,4,3) GammaL and GL selectors", limit: secs(60), run: family_343 },
        Criterion { id: 5, title: "catalog 3.S6-deg18 and 2.M12-deg24 verify", limit: secs(120), run: catalog },
        Criterion { id: 6, title: "automorphism orbit table", limit: secs(300), run: aut_table },
        Criterion { id: 7, title: "extraspecial holomorph p=3, m=1", limit: secs(120), run: holomorph },
        Criterion { id: 8, title: "Sylow model q=3 with rank discrepancy record", limit: secs(60), run: sylow },
        Criterion { id: 9, title: "sum-zero example (2,2,3)", limit: secs(10), run: sum_zero },
        Criterion { id: 10, title: "block system invariants on the rank 3 corpus", limit: secs(300), run: block_invariants },
        Criterion { id: 11, title: "transitive linear corpus spot checks", limit: secs(600), run: linear_corpus },
    ];
    let mut unexpected = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let (mut failed, notes, error) = match &result {
            Ok(v) => (v.failed().into_iter().map(String::from).collect::<Vec<_>>(), v.notes.clone(), None),
            Err(e) => (vec!["error".to_string()], Vec::new(), Some(e.to_string())),
        };
        if elapsed > c.limit {
            failed.push("time limit".into());
        }
        let status = if failed.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{status} {:>2} {} [exact; {:.2}s, limit {}s]",
            c.id,
            c.title,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        if let Some(e) = error {
            println!("      error: {e}");
        }
        for f in &failed {
            println!("      failed: {f}");
        }
        for n in &notes {
            println!("      note: {n}");
        }
        match UNATTAINABLE.iter().find(|(id, _, _)| *id == c.id) {
            Some((_, check, analysis)) => {
                println!("      documented as unattainable: {analysis}");
                if failed != [*check] {
                    println!("      UNEXPECTED: documented failure was `{check}`");
                    unexpected += 1;
                }
            }
            None if !failed.is_empty() => unexpected += 1,
            None => {}
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
