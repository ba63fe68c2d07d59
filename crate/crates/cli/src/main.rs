//! `tricolour`: monochromatic domination checks, audits and search campaigns
//! for 3-edge-coloured tournaments.
//!
//! Exit status: 0 when the run completed with no violator or alarm, 1 when a
//! violator or an "ALL NECESSARY CONDITIONS PASS" alarm was found, 2 on usage
//! or input errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tricolour::auditor::{audit, AuditReport, Verdict};
use tricolour::domination::{min_cover, CoverOutcome, DominationRelation, DEFAULT_K_MAX};
use tricolour::search::{
    audit_campaign, estimate_f, parse_pattern, search_pattern, verify_conjecture, verify_ssw2, CampaignResult,
    ColourCount, EnumerationSpec, Filter, Mode, RunOptions, Shard, DEFAULT_BUDGET, DEFAULT_SEED,
};
use tricolour::{find_rainbow_triangle, ColouredTournament, VertexSet};

#[derive(Parser, Debug)]
#[command(name = "tricolour", version, about = "Monochromatic domination in coloured tournaments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Domination sets, dominating vertices and rainbow triangles of one instance.
    Check(InstanceArgs),
    /// Audit one instance, or every instance of a space when --order is given.
    Audit(AuditArgs),
    /// Verify the two-colour theorem (--colours 2) or the T3 disjunction (--colours 3).
    Verify(VerifyArgs),
    /// Minimum cover of one instance, or the cover campaign when --order is given.
    Cover(CoverArgs),
    /// Scan completions of a Hamilton cycle with a fixed colour pattern.
    Search(SearchArgs),
    /// Print a seeded random instance.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Canonical,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    None,
    TwoColourVertices,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Args, Debug)]
struct InstanceArgs {
    /// Instance file; `-` reads standard input.
    #[arg(long, value_name = "PATH", conflicts_with = "instance")]
    input: Option<PathBuf>,
    /// Inline instance; a literal `\n` separates lines.
    #[arg(long, value_name = "TEXT")]
    instance: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct SpaceArgs {
    #[arg(long, value_name = "N")]
    order: Option<usize>,
    #[arg(long, value_name = "2|3", default_value_t = 3)]
    colours: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    /// Number of samples (sampled mode only).
    #[arg(long, value_name = "N")]
    samples: Option<u64>,
    /// Seed for sampled mode; defaults to 1398232883 (0x53575733).
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Scan only indices congruent to K mod M.
    #[arg(long, value_name = "K/M")]
    shard: Option<String>,
    /// Largest exhaustive space accepted.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = FilterArg::None)]
    filter: FilterArg,
    /// Worker threads; 0 uses every available core.
    #[arg(long, value_name = "N", default_value_t = 0)]
    workers: usize,
    /// Print a progress line to standard error every N indices per worker.
    #[arg(long, value_name = "N")]
    progress: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[arg(long, value_name = "PATH", conflicts_with_all = ["instance", "order"])]
    input: Option<PathBuf>,
    #[arg(long, value_name = "TEXT", conflicts_with = "order")]
    instance: Option<String>,
    #[command(flatten)]
    space: SpaceArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Require the rainbow triangle to be cyclic (3 colours only).
    #[arg(long, value_enum, default_value_t = Switch::On)]
    cyclic: Switch,
    #[command(flatten)]
    space: SpaceArgs,
}

#[derive(Args, Debug)]
struct CoverArgs {
    #[arg(long, value_name = "PATH", conflicts_with_all = ["instance", "order"])]
    input: Option<PathBuf>,
    #[arg(long, value_name = "TEXT", conflicts_with = "order")]
    instance: Option<String>,
    /// Largest cover size tried.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_K_MAX)]
    kmax: usize,
    #[command(flatten)]
    space: SpaceArgs,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Colours of consecutive cycle arcs, repeated around the cycle, e.g. `rb` or `rgb`.
    #[arg(long, value_name = "STR")]
    pattern: String,
    #[command(flatten)]
    space: SpaceArgs,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_name = "N")]
    order: usize,
    #[arg(long, value_name = "2|3", default_value_t = 3)]
    colours: usize,
    /// Defaults to 1398232883 (0x53575733).
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = FilterArg::None)]
    filter: FilterArg,
}

/// Usage or input problems; exit status 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(found) => ExitCode::from(u8::from(found)),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether a violator or an alarm was found.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Check(a) => check(&read_instance(a.input.as_ref(), a.instance.as_deref())?, a.format),
        Command::Audit(a) => {
            if a.space.order.is_some() {
                let spec = space_spec(&a.space)?;
                let result = audit_campaign(&spec, &run_options(&a.space)).map_err(|e| usage(e.to_string()))?;
                return Ok(report_campaign(&result, a.space.format));
            }
            let t = read_instance(a.input.as_ref(), a.instance.as_deref())?;
            let report = audit(&t).map_err(|e| usage(e.to_string()))?;
            print_audit(&report, a.space.format);
            Ok(report.verdict == Verdict::AllNecessaryConditionsPass)
        }
        Command::Verify(a) => {
            let spec = space_spec(&a.space)?;
            let opts = run_options(&a.space);
            let result = match spec.colours {
                ColourCount::Two => {
                    if a.cyclic == Switch::Off {
                        bail!(usage("--cyclic applies to 3-coloured runs only"));
                    }
                    verify_ssw2(&spec, &opts)
                }
                ColourCount::Three => verify_conjecture(&spec, a.cyclic == Switch::On, &opts),
            }
            .map_err(|e| usage(e.to_string()))?;
            Ok(report_campaign(&result, a.space.format))
        }
        Command::Cover(a) => {
            if a.kmax == 0 {
                bail!(usage("--kmax must be at least 1"));
            }
            if a.space.order.is_some() {
                let spec = space_spec(&a.space)?;
                let result = estimate_f(&spec, a.kmax, &run_options(&a.space)).map_err(|e| usage(e.to_string()))?;
                return Ok(report_campaign(&result, a.space.format));
            }
            let t = read_instance(a.input.as_ref(), a.instance.as_deref())?;
            cover(&t, a.kmax, a.space.format)
        }
        Command::Search(a) => {
            if a.space.filter != FilterArg::None {
                bail!(usage("--filter cannot be combined with a cycle pattern"));
            }
            let pattern = parse_pattern(&a.pattern).map_err(|e| usage(e.to_string()))?;
            let spec = space_spec(&a.space)?;
            let result =
                search_pattern(&spec, &pattern, &run_options(&a.space)).map_err(|e| usage(e.to_string()))?;
            Ok(report_campaign(&result, a.space.format))
        }
        Command::Gen(a) => {
            let colours = ColourCount::from_count(a.colours).ok_or_else(|| usage("--colours must be 2 or 3"))?;
            let spec = EnumerationSpec::sampled(a.order, colours, a.seed.unwrap_or(DEFAULT_SEED), 1)
                .with_filter(filter(a.filter));
            spec.validate().map_err(|e| usage(e.to_string()))?;
            let t = spec.instance(0).expect("sampler output satisfies the filter");
            print!("{}", t.serialize());
            Ok(false)
        }
    }
}

fn filter(f: FilterArg) -> Filter {
    match f {
        FilterArg::None => Filter::None,
        FilterArg::TwoColourVertices => Filter::TwoColourVertices,
    }
}

fn space_spec(a: &SpaceArgs) -> Result<EnumerationSpec> {
    let order = a.order.ok_or_else(|| usage("--order is required"))?;
    let colours = ColourCount::from_count(a.colours).ok_or_else(|| usage("--colours must be 2 or 3"))?;
    let mode = match a.mode {
        ModeArg::Sampled => Mode::Sampled {
            seed: a.seed.unwrap_or(DEFAULT_SEED),
            samples: a.samples.ok_or_else(|| usage("--mode sampled needs --samples"))?,
        },
        _ if a.samples.is_some() || a.seed.is_some() => {
            bail!(usage("--samples and --seed apply to --mode sampled only"))
        }
        ModeArg::Exhaustive => Mode::Exhaustive,
        ModeArg::Canonical => Mode::Canonical,
    };
    let shard = match &a.shard {
        Some(s) => s.parse::<Shard>().map_err(|e| usage(e.to_string()))?,
        None => Shard::WHOLE,
    };
    let spec = EnumerationSpec::exhaustive(order, colours)
        .with_mode(mode)
        .with_filter(filter(a.filter))
        .with_shard(shard)
        .with_budget(a.budget);
    spec.validate().map_err(|e| usage(e.to_string()))?;
    Ok(spec)
}

fn run_options(a: &SpaceArgs) -> RunOptions {
    RunOptions {
        workers: a.workers,
        progress: a.progress,
    }
}

fn read_instance(path: Option<&PathBuf>, inline: Option<&str>) -> Result<ColouredTournament> {
    let (text, origin) = match (path, inline) {
        (Some(p), _) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| usage(e.to_string()))?;
            (s, "<stdin>".to_string())
        }
        (Some(p), _) => (
            std::fs::read_to_string(p)
                .with_context(|| format!("cannot read {}", p.display()))
                .map_err(|e| usage(format!("{e:#}")))?,
            p.display().to_string(),
        ),
        (None, Some(s)) => (s.replace("\\n", "\n"), "<instance>".to_string()),
        (None, None) => bail!(usage("give an instance with --input PATH or --instance TEXT")),
    };
    ColouredTournament::parse(&text).map_err(|e| usage(format!("{origin}: {e}")))
}

fn set_string(s: VertexSet) -> String {
    let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn check(t: &ColouredTournament, format: Format) -> Result<bool> {
    let n = t.order();
    let rel = DominationRelation::new(t);
    let dominating = rel.dominating_vertices();
    let sinks = rel.dominated_by_all();
    let t3 = find_rainbow_triangle(t, true);
    let rainbow = find_rainbow_triangle(t, false);
    let violator = dominating.is_empty() && t3.is_none();
    match format {
        Format::Json => {
            let matrix: Vec<Vec<String>> = (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| if x == y { String::new() } else { colour_cell(rel.colours(x, y)) })
                        .collect()
                })
                .collect();
            let out = json!({
                "n": n,
                "instance": t.serialize(),
                "dominating_vertices": dominating,
                "dominated_by_all": sinks,
                "t3": t3,
                "rainbow_triangle": rainbow,
                "dominates": matrix,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "order {n}")?;
            writeln!(s, "dominates (row x, column y: colours of x |-> y):")?;
            for x in 0..n {
                let cells: Vec<String> = (0..n)
                    .map(|y| {
                        let c = if x == y { ".".to_string() } else { colour_cell(rel.colours(x, y)) };
                        format!("{c:>3}")
                    })
                    .collect();
                writeln!(s, "{x:>3}:{}", cells.join(""))?;
            }
            writeln!(s, "dominating vertices: {}", set_string(dominating))?;
            writeln!(s, "dominated by all: {}", set_string(sinks))?;
            if let Some(r) = &rainbow {
                if !r.cyclic {
                    writeln!(s, "transitive rainbow triangle: {:?}", r.vertices)?;
                }
            }
            let head = match dominating.first() {
                Some(v) => format!("dominating vertex {v}"),
                None => "no dominating vertex".to_string(),
            };
            let tail = match &t3 {
                Some(r) => {
                    let [a, b, c] = r.vertices;
                    format!("T_3 at ({a},{b},{c})")
                }
                None => "no T_3".to_string(),
            };
            writeln!(s, "{head}; {tail}")?;
            if violator {
                writeln!(s, "VIOLATOR: neither a T_3 nor a dominating vertex")?;
            }
            print!("{s}");
        }
    }
    Ok(violator)
}

fn colour_cell(c: tricolour::ColourSet) -> String {
    if c.is_empty() {
        "-".to_string()
    } else {
        c.iter().map(|c| c.symbol()).collect()
    }
}

fn cover(t: &ColouredTournament, k_max: usize, format: Format) -> Result<bool> {
    let outcome = min_cover(t, k_max).map_err(|e| usage(e.to_string()))?;
    match format {
        Format::Json => {
            let out = match &outcome {
                CoverOutcome::Found(c) => json!({"n": t.order(), "order": c.order, "members": c.members}),
                CoverOutcome::NoneWithin(k) => json!({"n": t.order(), "order": null, "none_within": k}),
            };
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Format::Text => match &outcome {
            CoverOutcome::Found(c) => println!("min cover order {}, members {}", c.order, set_string(c.members)),
            CoverOutcome::NoneWithin(k) => println!("no cover with at most {k} vertices"),
        },
    }
    Ok(outcome.cover().is_none())
}

fn print_audit(r: &AuditReport, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(r).expect("report serializes")),
        Format::Text => {
            println!("order {}", r.n);
            if let Some(c) = &r.cycle {
                println!("qualifying Hamilton cycle: {:?} ({} found)", c.vertices(), r.qualifying_cycles);
            }
            for p in &r.pivots {
                println!("pivot {} renaming {:?}", p.pivot, p.renaming.internal);
            }
            for f in &r.findings {
                let status = if f.holds { "holds" } else { "FAILS" };
                match &f.witness {
                    Some(w) => println!("{:<16} {status}  {}", f.check.as_str(), serde_json::to_string(w).unwrap()),
                    None => println!("{:<16} {status}", f.check.as_str()),
                }
            }
            println!("verdict: {}", r.verdict);
        }
    }
}

/// Prints a campaign result; returns whether it found violators.
fn report_campaign(r: &CampaignResult, format: Format) -> bool {
    match format {
        Format::Json => println!("{}", r.to_json()),
        Format::Text => {
            let spec = &r.spec;
            let mode = match spec.mode {
                Mode::Exhaustive => "exhaustive".to_string(),
                Mode::Canonical => "canonical".to_string(),
                Mode::Sampled { seed, samples } => format!("sampled ({samples} samples, seed {seed})"),
            };
            println!("campaign: {}", serde_json::to_value(r.campaign).unwrap().as_str().unwrap());
            println!(
                "order {}, {} colours, {mode}, filter {}, shard {}",
                spec.order,
                spec.colours.count(),
                serde_json::to_value(&spec.filter).unwrap().as_str().unwrap(),
                spec.shard
            );
            let c = &r.tally.counts;
            println!("scanned {}, examined {}, violators {}", c.scanned, c.examined, c.violators);
            for (k, v) in &r.tally.tallies {
                println!("  {k}: {v}");
            }
            if !r.tally.check_failures.is_empty() {
                println!("check failures:");
                for (k, v) in &r.tally.check_failures {
                    println!("  {k}: {v}");
                }
            }
            for (k, f) in &r.tally.extremal {
                println!("witness for {k} (index {}):\n{}", f.index, f.instance.serialize().trim_end());
            }
            for f in &r.tally.violators {
                println!("VIOLATOR (index {}):\n{}", f.index, f.instance.serialize().trim_end());
            }
            println!(
                "throughput: {:.0} instances/s over {:.2} s of worker time",
                r.telemetry.throughput(),
                r.telemetry.elapsed.as_secs_f64()
            );
        }
    }
    r.violators() > 0
}
