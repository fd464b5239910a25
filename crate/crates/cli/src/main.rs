//! `ringinv`: validate ring files, list the catalog, run theorem checks.

mod profile;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use ringinv::analysis::{Analysis, Caps};
use ringinv::catalog::{self, format, named_instances, random_instances, Instance, RandomSpec};
use ringinv::theorems::{check_all, counterexample_search, Mask, TheoremId, TheoremReport, Verdict};
use ringinv::Error;

const EXIT_PARSE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_COUNTEREXAMPLE: u8 = 4;

#[derive(Parser)]
#[command(name = "ringinv", version, about = "Fixed rings of finite automorphism groups, checked exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an instance file.
    Validate { path: PathBuf },
    /// List the named catalog, optionally with random members, and write it out.
    Catalog {
        #[command(flatten)]
        source: RandomArgs,
        /// Write the instances in canonical text form.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a manifest of members, provenance and tags.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Check theorems on instances and write a JSON report.
    Check {
        /// Instance files; without files (and without --random) the named catalog is used.
        files: Vec<PathBuf>,
        /// Include the named catalog even when files are given.
        #[arg(long)]
        named: bool,
        #[command(flatten)]
        source: RandomArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Search random instances for counterexamples, usually with masked hypotheses.
    Search {
        /// Number of random instances to try.
        #[arg(long, default_value_t = 200, env = "RINGINV_BUDGET")]
        budget: usize,
        #[arg(long, default_value_t = 64, env = "RINGINV_MAX_ORDER")]
        max_order: u64,
        /// Also search the named catalog.
        #[arg(long)]
        named: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print the invariants of every instance in a file (or a named instance).
    Profile {
        path: Option<PathBuf>,
        /// Substring of a named instance, used when no path is given.
        #[arg(long)]
        name: Option<String>,
        #[arg(long, env = "RINGINV_CAPS")]
        caps: Option<String>,
        #[arg(long, default_value_t = 0, env = "RINGINV_SEED")]
        seed: u64,
    },
}

#[derive(Args)]
struct RandomArgs {
    /// Number of seeded random instances to add.
    #[arg(long, default_value_t = 0, env = "RINGINV_RANDOM")]
    random: usize,
    #[arg(long = "random-max-order", default_value_t = 64, env = "RINGINV_RANDOM_MAX_ORDER")]
    random_max_order: u64,
    #[arg(long = "random-seed", default_value_t = 0, env = "RINGINV_RANDOM_SEED")]
    random_seed: u64,
}

#[derive(Args)]
struct RunArgs {
    /// Cap overrides, `key=value,...`.
    #[arg(long, env = "RINGINV_CAPS")]
    caps: Option<String>,
    #[arg(long, default_value_t = 0, env = "RINGINV_SEED")]
    seed: u64,
    /// Comma-separated theorem ids; all when omitted.
    #[arg(long, env = "RINGINV_THEOREMS", value_delimiter = ',')]
    theorems: Vec<String>,
    /// `THEOREM:index`, treated as true; repeatable.
    #[arg(long = "mask", env = "RINGINV_MASK", value_delimiter = ',')]
    masks: Vec<String>,
    /// JSON report path; stdout when omitted.
    #[arg(long, env = "RINGINV_OUT")]
    out: Option<PathBuf>,
    /// Worker threads; all cores when omitted.
    #[arg(long, env = "RINGINV_JOBS")]
    jobs: Option<usize>,
}

impl RunArgs {
    fn caps(&self) -> Result<Caps> {
        parse_caps(self.caps.as_deref())
    }

    fn theorems(&self) -> Result<Vec<TheoremId>> {
        if self.theorems.is_empty() {
            return Ok(TheoremId::ALL.to_vec());
        }
        Ok(self.theorems.iter().map(|t| t.parse()).collect::<ringinv::Result<_>>()?)
    }

    fn masks(&self) -> Result<Vec<Mask>> {
        Ok(self.masks.iter().map(|m| m.parse()).collect::<ringinv::Result<_>>()?)
    }

    fn configure_threads(&self) -> Result<()> {
        if let Some(n) = self.jobs {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global()
                .context("configuring worker threads")?;
        }
        Ok(())
    }
}

fn parse_caps(list: Option<&str>) -> Result<Caps> {
    let mut caps = Caps::default();
    if let Some(list) = list {
        caps.apply_list(list)?;
    }
    Ok(caps)
}

/// Exit code for library errors met while loading files.
fn load_exit_code(e: &anyhow::Error) -> Option<u8> {
    match e.downcast_ref::<Error>()? {
        Error::Parse { .. } => Some(EXIT_PARSE),
        Error::Validation { .. } => Some(EXIT_INVALID),
        _ => None,
    }
}

fn load_file(path: &Path) -> Result<Vec<Instance>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut list = format::parse(&text)?;
    for inst in &mut list {
        inst.derive_tags()?;
    }
    Ok(list)
}

fn random_members(args: &RandomArgs) -> Vec<Instance> {
    if args.random == 0 {
        return Vec::new();
    }
    let spec = RandomSpec {
        count: args.random,
        max_order: args.random_max_order,
        seed: args.random_seed,
        ..Default::default()
    };
    let (list, stats) = random_instances(&spec);
    eprintln!(
        "random: {} instances, {}/{} tables valid ({:.2}), {} from products, {} without automorphisms",
        list.len(),
        stats.valid,
        stats.attempted,
        stats.valid_ratio(),
        stats.products,
        stats.rigid
    );
    list
}

fn write_report(out: Option<&Path>, reports: &[TheoremReport]) -> Result<()> {
    let json = serde_json::to_string_pretty(reports)? + "\n";
    match out {
        Some(path) => fs::write(path, json).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{json}"),
    }
    Ok(())
}

/// Rows are instances, columns statements, cells verdict glyphs.
fn summary(reports: &[TheoremReport], ids: &[TheoremId]) -> String {
    let mut rows: BTreeMap<(String, String), BTreeMap<TheoremId, Verdict>> = BTreeMap::new();
    for r in reports {
        rows.entry((r.ring.clone(), r.group.clone()))
            .or_default()
            .insert(r.theorem, r.verdict);
    }
    let width = rows.keys().map(|(r, g)| r.len() + g.len() + 3).max().unwrap_or(8).max(8);
    let mut s = format!("{:width$} ", "instance");
    for id in ids {
        s.push_str(&format!("{:>9}", id.as_str()));
    }
    s.push('\n');
    for ((ring, group), cells) in &rows {
        s.push_str(&format!("{:width$} ", format!("{ring} | {group}")));
        for id in ids {
            let g = cells.get(id).map_or(" ", |v| v.glyph());
            s.push_str(&format!("{g:>9}"));
        }
        s.push('\n');
    }
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for r in reports {
        *counts.entry(r.verdict.to_string()).or_default() += 1;
    }
    let tally: Vec<String> = counts.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    s.push_str(&format!(
        "legend: V verified, . vacuous, X counterexample, ? skipped(cap)\n{}\n",
        tally.join(", ")
    ));
    s
}

fn analyses(instances: &[Instance], caps: &Caps, seed: u64) -> Result<Vec<Analysis>> {
    Ok(instances
        .iter()
        .map(|i| i.analysis(caps, seed))
        .collect::<ringinv::Result<_>>()?)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Validate { path } => {
            let list = load_file(&path)?;
            for inst in &list {
                println!(
                    "ok: {} (|R| = {}, |G| = {}) tags: {}",
                    inst.name(),
                    inst.ring.order(),
                    inst.group.order(),
                    inst.tags.iter().cloned().collect::<Vec<_>>().join(",")
                );
            }
            Ok(0)
        }
        Command::Catalog { source, out, manifest } => {
            let mut list = named_instances();
            list.extend(random_members(&source));
            for inst in &list {
                println!(
                    "{:40} |R| = {:4} |G| = {:3} {}",
                    inst.name(),
                    inst.ring.order(),
                    inst.group.order(),
                    inst.tags.iter().cloned().collect::<Vec<_>>().join(",")
                );
            }
            if let Some(path) = out {
                catalog::save(&path, &list)?;
            }
            if let Some(path) = manifest {
                fs::write(&path, catalog::manifest(&list))?;
            }
            Ok(0)
        }
        Command::Check { files, named, source, run } => {
            run.configure_threads()?;
            let caps = run.caps()?;
            let ids = run.theorems()?;
            let masks = run.masks()?;
            let mut list = Vec::new();
            if named || (files.is_empty() && source.random == 0) {
                list.extend(named_instances());
            }
            for f in &files {
                list.extend(load_file(f)?);
            }
            list.extend(random_members(&source));
            let reports = check_all(&analyses(&list, &caps, run.seed)?, &ids, &masks);
            write_report(run.out.as_deref(), &reports)?;
            let text = summary(&reports, &ids);
            if run.out.is_some() {
                print!("{text}");
            } else {
                eprint!("{text}");
            }
            let bad = reports.iter().any(|r| r.verdict == Verdict::Counterexample);
            Ok(if bad { EXIT_COUNTEREXAMPLE } else { 0 })
        }
        Command::Search {
            budget,
            max_order,
            named,
            run,
        } => {
            run.configure_threads()?;
            let caps = run.caps()?;
            let ids = run.theorems()?;
            let masks = run.masks()?;
            let spec = RandomSpec {
                count: budget,
                max_order,
                seed: run.seed,
                ..Default::default()
            };
            let fixed: Vec<Instance> = if named { named_instances() } else { Vec::new() };
            let offset = fixed.len();
            let (random, _) = random_instances(&spec);
            let build = |i: usize| -> Option<Analysis> {
                let inst = if i < offset { fixed.get(i) } else { random.get(i - offset) }?;
                inst.analysis(&caps, run.seed).ok()
            };
            let hits = counterexample_search(&ids, &masks, offset + budget, build);
            write_report(run.out.as_deref(), &hits)?;
            let line = format!("{} counterexample(s) in {} instances\n", hits.len(), offset + budget);
            if run.out.is_some() {
                print!("{line}");
            } else {
                eprint!("{line}");
            }
            Ok(if hits.is_empty() { 0 } else { EXIT_COUNTEREXAMPLE })
        }
        Command::Profile { path, name, caps, seed } => {
            let caps = parse_caps(caps.as_deref())?;
            let list = match (path, name) {
                (Some(p), _) => load_file(&p)?,
                (None, Some(n)) => named_instances()
                    .into_iter()
                    .filter(|i| i.name().contains(n.as_str()))
                    .collect(),
                (None, None) => anyhow::bail!("give a file or --name"),
            };
            for inst in &list {
                print!("{}", profile::render(&inst.analysis(&caps, seed)?));
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(load_exit_code(&e).unwrap_or(1))
        }
    }
}
