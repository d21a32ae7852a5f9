use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use rank3kit::analyzer::{analyze_with, Rank3Class, Rank3Report};
use rank3kit::catalog::{builtin_entry, verify_entry, Catalog, CatalogEntry, Claims, Status};
use rank3kit::exec::Execution;
use rank3kit::json::{group_digest, input_digest, JsonReport};
use rank3kit::linear::examples::{
    build_affine_example, build_extraspecial_holomorph, build_sum_zero_example, build_sylow_model,
    AffineExample,
};
use rank3kit::linear::family::{scan_grid, FamilyContext, FamilySpec};
use rank3kit::numtheory::as_prime_power;
use rank3kit::perm::text::{format_group_file, parse_group_file};
use rank3kit::perm::{PermGroup, DEFAULT_ENUMERATION_CAP};
use rank3kit::structure::{automorphism_orbit_count, SmallGroupTable, DEFAULT_SEARCH_BUDGET};
use rank3kit::suite::{run_suites, CheckStatus, Suite};
use rank3kit::{Error, Result};

const EXIT_FAIL: u8 = 1;
const EXIT_CAPACITY: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "rank3kit", version, about = "Analyze rank 3 permutation groups")]
struct Cli {
    /// Largest group order any enumeration may touch.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap_order: u128,
    /// Shuffles job scheduling in `verify`; never changes results.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Only errors and the exit status.
    #[arg(short, long, global = true)]
    quiet: bool,
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze a group file.
    Analyze {
        file: PathBuf,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Build a member of the linear family, analyze it and cross-check the
    /// arithmetic rank criterion.
    Family {
        /// e.g. `d=3,q=4,r=3,gens=delta,phi`.
        #[arg(long)]
        family: FamilySpec,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the generators as a group file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Compare the rank criterion with computed ranks over a grid.
    Scan {
        #[arg(long, default_value_t = 3)]
        dmax: usize,
        #[arg(long, default_value_t = 9)]
        qmax: u64,
    },
    /// Build and analyze one of the worked examples.
    Example {
        name: ExampleName,
        /// Field order for `sylow`.
        #[arg(long, default_value_t = 3)]
        q: u64,
        /// Prime for `holomorph` and `sum-zero`.
        #[arg(long)]
        p: Option<u64>,
        /// Half-rank of the extraspecial group for `holomorph`.
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Dimension of the block space for `sum-zero`.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Number of blocks for `sum-zero`.
        #[arg(long, default_value_t = 3)]
        copies: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Maintain a catalog of groups with verified claims.
    Catalog {
        #[arg(long, default_value = "catalog.json")]
        catalog: PathBuf,
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the verification suites.
    Verify {
        /// Repeatable; all suites when omitted.
        #[arg(long)]
        suite: Vec<Suite>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Automorphism orbits of a group given by its multiplication table.
    Autorbits { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Add (or replace) an entry and verify it. Without `--file` the name
    /// must be a builtin entry (3.S6-deg18, 2.M12-deg24).
    Add {
        name: String,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        order: Option<u128>,
        #[arg(long)]
        rank: Option<usize>,
        /// Comma-separated, e.g. `1,2,15`.
        #[arg(long, value_delimiter = ',')]
        subdegrees: Option<Vec<usize>>,
        /// Block size and number of blocks, e.g. `3,6`.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        blocks: Option<Vec<usize>>,
        #[arg(long)]
        semiprimitive: Option<bool>,
        #[arg(long)]
        innately_transitive: Option<bool>,
        #[arg(long)]
        class: Option<Rank3Class>,
        #[arg(long, default_value = "")]
        provenance: String,
    },
    List,
    /// Re-verify one entry, or all of them.
    Verify { name: Option<String> },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExampleName {
    AffineG1,
    AffineG2,
    Sylow,
    Holomorph,
    SumZero,
}

struct Ctx {
    cap: u128,
    seed: u64,
    quiet: bool,
    exec: Execution,
}

impl Ctx {
    fn say(&self, line: impl AsRef<str>) {
        if !self.quiet {
            println!("{}", line.as_ref());
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let ctx = Ctx {
        cap: cli.cap_order,
        seed: cli.seed,
        quiet: cli.quiet,
        exec: if cli.sequential { Execution::Sequential } else { Execution::Parallel },
    };
    match run(&ctx, cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_capacity() { EXIT_CAPACITY } else { EXIT_FAIL })
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Result<u8> {
    match command {
        Command::Analyze { file, json } => {
            let text = fs::read(&file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
            let group = parse_group_file(&String::from_utf8_lossy(&text))?;
            let report = analyze_with(&group, ctx.cap, ctx.exec)?;
            print_report(ctx, &report);
            finish_report(ctx, report, input_digest(&text), json.as_deref())
        }
        Command::Family { family, json, export } => {
            family.validate()?;
            let built = FamilyContext::new(family.d, family.q(), family.r)?.build(&family.selectors)?;
            export_group(export.as_deref(), &built.group)?;
            let report = analyze_with(&built.group, ctx.cap, ctx.exec)?;
            let predicate = built.predicate();
            ctx.say(format!("family {family}"));
            print_report(ctx, &report);
            for reason in &predicate.reasons {
                ctx.say(format!("  criterion: {reason}"));
            }
            let verdict = match predicate.rank3 {
                None => "OUTSIDE SCOPE",
                Some(p) if p == (report.rank == 3) => "CONSISTENT",
                Some(_) => "INCONSISTENT",
            };
            ctx.say(format!(
                "predicate {}, computed rank {}, verdict {verdict}",
                predicate.rank3.map_or("n/a".into(), |b| b.to_string()),
                report.rank
            ));
            let code = finish_report(ctx, report, group_digest(&built.group), json.as_deref())?;
            Ok(if verdict == "INCONSISTENT" { EXIT_FAIL } else { code })
        }
        Command::Scan { dmax, qmax } => {
            let dims: Vec<usize> = (2..=dmax).collect();
            let qs: Vec<u64> = (3..=qmax).filter(|&q| as_prime_power(q).is_some()).collect();
            let records = scan_grid(&dims, &qs, ctx.exec)?;
            let mut bad = 0;
            for r in &records {
                let agrees = match r.agrees {
                    None => "outside scope",
                    Some(true) => "agrees",
                    Some(false) => "DISAGREES",
                };
                let failed_models: Vec<&str> = r
                    .suborbit_checks
                    .iter()
                    .filter(|(_, ok)| !ok)
                    .map(|(m, _)| m.as_str())
                    .collect();
                if r.agrees == Some(false) || !failed_models.is_empty() {
                    bad += 1;
                }
                ctx.say(format!(
                    "{:<32} degree {:>4} order {:>10} rank {} {:?} {agrees}{}",
                    r.spec,
                    r.degree,
                    r.order,
                    r.rank,
                    r.subdegrees,
                    if failed_models.is_empty() { String::new() } else { format!(" orbit models failed {failed_models:?}") }
                ));
            }
            ctx.say(format!("{} groups, {bad} with disagreements", records.len()));
            Ok(if bad > 0 { EXIT_FAIL } else { 0 })
        }
        Command::Example { name, q, p, m, dim, copies, json, export } => {
            let group = match name {
                ExampleName::AffineG1 => build_affine_example(AffineExample::G1)?,
                ExampleName::AffineG2 => build_affine_example(AffineExample::G2)?,
                ExampleName::Sylow => {
                    let model = build_sylow_model(q)?;
                    let (rank, stated, differs) = model.rank_report()?;
                    ctx.say(format!(
                        "stated rank {stated}; computed rank = {rank}{}",
                        if differs { "; DISCREPANCY" } else { "" }
                    ));
                    model.group
                }
                ExampleName::Holomorph => {
                    build_extraspecial_holomorph(p.unwrap_or(3), m, ctx.cap, ctx.exec)?.group
                }
                ExampleName::SumZero => build_sum_zero_example(dim, p.unwrap_or(2), copies)?,
            };
            export_group(export.as_deref(), &group)?;
            let report = analyze_with(&group, ctx.cap, ctx.exec)?;
            print_report(ctx, &report);
            finish_report(ctx, report, group_digest(&group), json.as_deref())
        }
        Command::Catalog { catalog, action } => run_catalog(ctx, &catalog, action),
        Command::Verify { suite, json } => {
            let run = run_suites(&suite, ctx.cap, ctx.exec, ctx.seed)?;
            for c in &run.checks {
                let status = match c.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Skipped => "SKIP",
                };
                ctx.say(format!("{status} {}/{}: {}", c.suite, c.check, c.detail));
                if let Some(note) = &c.note {
                    ctx.say(format!("     note: {note}"));
                }
            }
            if let Some(path) = json {
                write_output(&path, &(serde_json::to_string_pretty(&run).map_err(|e| Error::Json(e.to_string()))? + "\n"))?;
            }
            Ok(run.exit_code() as u8)
        }
        Command::Autorbits { file } => {
            let text = fs::read_to_string(&file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
            let table = SmallGroupTable::parse(&text)?;
            let r = automorphism_orbit_count(&table, DEFAULT_SEARCH_BUDGET, ctx.exec)?;
            ctx.say(format!(
                "order {}, |Aut| = {}, {} orbits {:?}, shape {}",
                table.order(),
                r.aut_order,
                r.orbit_count,
                r.orbit_sizes,
                r.class.tag()
            ));
            Ok(0)
        }
    }
}

fn run_catalog(ctx: &Ctx, path: &Path, action: CatalogAction) -> Result<u8> {
    let mut catalog = Catalog::load(path)?;
    match action {
        CatalogAction::Add {
            name,
            file,
            order,
            rank,
            subdegrees,
            blocks,
            semiprimitive,
            innately_transitive,
            class,
            provenance,
        } => {
            let block_data = match blocks.as_deref() {
                None => None,
                Some(&[size, count]) => Some((size, count)),
                Some(_) => return Err(Error::InvalidArgument("--blocks takes `size,count`".into())),
            };
            let given = Claims {
                order,
                rank,
                subdegrees,
                block_data,
                semiprimitive,
                innately_transitive,
                class,
            };
            let mut entry = match file {
                Some(f) => {
                    let text = fs::read_to_string(&f).map_err(|e| Error::Io(format!("{}: {e}", f.display())))?;
                    let provenance = if provenance.is_empty() { f.display().to_string() } else { provenance };
                    CatalogEntry::from_group_file(&name, &text, given, &provenance)?
                }
                None => {
                    let mut e = builtin_entry(&name)?.ok_or_else(|| {
                        Error::InvalidArgument(format!("`{name}` is not a builtin entry; pass --file"))
                    })?;
                    merge_claims(&mut e.claims, given);
                    if !provenance.is_empty() {
                        e.provenance = provenance;
                    }
                    e
                }
            };
            let verified = verify_entry(&mut entry, ctx.cap)?.verified();
            report_entry(ctx, &entry);
            catalog.upsert(entry);
            catalog.save(path)?;
            Ok(if verified { 0 } else { EXIT_FAIL })
        }
        CatalogAction::List => {
            for e in &catalog.entries {
                report_entry(ctx, e);
            }
            Ok(0)
        }
        CatalogAction::Verify { name } => {
            let names: Vec<String> = match name {
                Some(n) => {
                    if catalog.get(&n).is_none() {
                        return Err(Error::InvalidArgument(format!("no catalog entry `{n}`")));
                    }
                    vec![n]
                }
                None => catalog.entries.iter().map(|e| e.name.clone()).collect(),
            };
            let mut code = 0;
            for n in names {
                let entry = catalog.get_mut(&n).expect("listed above");
                match verify_entry(entry, ctx.cap) {
                    Ok(v) if !v.verified() => code = code.max(EXIT_FAIL),
                    Ok(_) => {}
                    Err(e) if e.is_capacity() => {
                        eprintln!("{n}: {e}");
                        if code == 0 {
                            code = EXIT_CAPACITY;
                        }
                        continue;
                    }
                    Err(e) => return Err(e),
                }
                report_entry(ctx, entry);
            }
            catalog.save(path)?;
            Ok(code)
        }
    }
}

fn merge_claims(base: &mut Claims, over: Claims) {
    base.order = over.order.or(base.order);
    base.rank = over.rank.or(base.rank);
    base.subdegrees = over.subdegrees.or(base.subdegrees.take());
    base.block_data = over.block_data.or(base.block_data);
    base.semiprimitive = over.semiprimitive.or(base.semiprimitive);
    base.innately_transitive = over.innately_transitive.or(base.innately_transitive);
    base.class = over.class.or(base.class);
}

fn report_entry(ctx: &Ctx, e: &CatalogEntry) {
    let status = match &e.status {
        Status::Unverified => "unverified".to_string(),
        Status::Verified { tool_version, .. } => format!("verified ({tool_version})"),
        Status::Mismatch { mismatches, .. } => {
            let fields: Vec<String> = mismatches
                .iter()
                .map(|m| format!("{}: claimed {}, computed {}", m.field, m.claimed, m.computed))
                .collect();
            format!("MISMATCH [{}]", fields.join("; "))
        }
    };
    ctx.say(format!("{} (degree {}): {status}", e.name, e.degree));
}

fn print_report(ctx: &Ctx, r: &Rank3Report) {
    ctx.say(format!(
        "degree {}, order {}, rank {}, subdegrees {:?}",
        r.degree, r.order, r.rank, r.subdegrees
    ));
    if let Some(f) = r.flags {
        ctx.say(format!(
            "primitive {}, quasiprimitive {}, innately transitive {}, semiprimitive {}",
            f.primitive, f.quasiprimitive, f.innately_transitive, f.semiprimitive
        ));
    }
    if let Some(i) = &r.imprimitivity {
        ctx.say(format!(
            "{} blocks of size {}, |K| = {}, |K_(B)| = {}",
            i.block_count, i.block_size, i.kernel_order, i.kernel_pointwise_order
        ));
    }
    ctx.say(format!("class {}", r.class));
    for skip in &r.capacity_skips {
        ctx.say(format!("capacity skip: {skip}"));
    }
}

/// Writes the JSON report if asked; exit status 2 when any part of the
/// analysis was skipped for capacity.
fn finish_report(ctx: &Ctx, report: Rank3Report, digest: String, json: Option<&Path>) -> Result<u8> {
    let skipped = !report.capacity_skips.is_empty();
    if let Some(path) = json {
        let text = JsonReport::new(report, digest).to_json()?;
        write_output(path, &text)?;
        if path != Path::new("-") {
            ctx.say(format!("wrote {}", path.display()));
        }
    }
    Ok(if skipped { EXIT_CAPACITY } else { 0 })
}

fn export_group(path: Option<&Path>, group: &PermGroup) -> Result<()> {
    match path {
        Some(p) => write_output(p, &format_group_file(group.degree(), group.generators())),
        None => Ok(()),
    }
}

fn write_output(path: &Path, text: &str) -> Result<()> {
    if path == Path::new("-") {
        print!("{text}");
        Ok(())
    } else {
        fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}
