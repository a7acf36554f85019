//! `coxex`: group summaries, excess reports, theorem sweeps and worked
//! example reproduction.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use coxex::descriptor::format_components;
use coxex::excess::{parse_word, ExcessEngine, ExcessReport};
use coxex::roots::{DEFAULT_GUARD, GUARD_ENV};
use coxex::verify::{
    descriptor_from_flags, group_info, registry, repro, run_suite, ParabolicSelection, ReportFormat, SuiteConfig,
    SuiteResult, REPRO_IDS,
};
use coxex::{CoxeterDescriptor, RootSystem};

#[derive(Parser, Debug)]
#[command(name = "coxex", version, about = "Excess and reflection excess in finite Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group-level queries.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Excess report for one element.
    Excess(ExcessArgs),
    /// Exhaustive theorem sweeps.
    Verify(VerifyArgs),
    /// Recompute a worked example and diff it against golden values.
    Repro {
        /// One of sym5-table, d12, sym7-gap, or all.
        id: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    /// Rank, root count, order and longest element.
    Info {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        guard: GuardArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// Family letter (A, B, D, I2, ...) or a full descriptor such as B3 or A2xA1.
    #[arg(long = "type", value_name = "TYPE")]
    family: String,
    #[arg(long)]
    rank: Option<usize>,
    /// Dihedral parameter for I2(m).
    #[arg(long)]
    m: Option<u32>,
}

impl GroupArgs {
    fn components(&self) -> Result<Vec<CoxeterDescriptor>> {
        Ok(descriptor_from_flags(&self.family, self.rank, self.m)?)
    }

    fn root_system(&self) -> Result<RootSystem> {
        Ok(RootSystem::product(&self.components()?)?)
    }
}

#[derive(Args, Debug)]
struct GuardArgs {
    /// Largest group order to enumerate.
    #[arg(long, env = GUARD_ENV, default_value_t = DEFAULT_GUARD)]
    guard: u128,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct ExcessArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Signed cycle notation, e.g. "(+2 +3 +5)", or a generator word "[1 2 3]".
    #[arg(long)]
    element: String,
    /// 1-based generator list of a standard parabolic; repeatable.
    #[arg(long)]
    parabolic: Vec<String>,
    #[command(flatten)]
    guard: GuardArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Family letter with --rank, or full descriptors; repeatable.
    #[arg(long = "type", value_name = "TYPE", required = true)]
    families: Vec<String>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    m: Option<u32>,
    /// Check name, or "all"; repeatable. "list" prints the registry.
    #[arg(long, default_value = "all")]
    theorem: Vec<String>,
    /// "all", "maximal", or a 1-based generator list; lists are repeatable.
    #[arg(long, default_value = "all")]
    parabolic: Vec<String>,
    #[command(flatten)]
    guard: GuardArgs,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means the command ran but found failures or diffs.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Group { command: GroupCommand::Info { group, guard, output } } => {
            let info = group_info(&group.root_system()?, guard.guard);
            let body = match output.format {
                Format::Json => serde_json::to_string_pretty(&info)? + "\n",
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["descriptor", "rank", "positive_roots", "order", "longest_length", "enumerable"])?;
                    w.write_record([
                        info.descriptor.clone(),
                        info.rank.to_string(),
                        info.positive_roots.to_string(),
                        info.order.clone(),
                        info.longest_length.to_string(),
                        info.enumerable.to_string(),
                    ])?;
                    String::from_utf8(w.into_inner()?)?
                }
            };
            emit(&output, &body)?;
            Ok(true)
        }
        Command::Excess(args) => {
            let engine = ExcessEngine::new(args.group.root_system()?, args.guard.guard)?;
            let w = engine.parse_element(&args.element)?;
            let parabolics = args.parabolic.iter().map(|p| parse_generators(p)).collect::<Result<Vec<_>>>()?;
            let report = engine.report(&w, &parabolics)?;
            let body = match args.output.format {
                Format::Json => report.to_json() + "\n",
                Format::Csv => excess_csv(&report)?,
            };
            emit(&args.output, &body)?;
            Ok(true)
        }
        Command::Verify(args) => verify(args),
        Command::Repro { id, output } => {
            let ids: Vec<&str> = if id == "all" { REPRO_IDS.to_vec() } else { vec![id.as_str()] };
            let reports = ids.iter().map(|id| repro(id)).collect::<coxex::Result<Vec<_>>>()?;
            let ok = reports.iter().all(|r| r.is_success());
            let body = match output.format {
                Format::Json => serde_json::to_string_pretty(&reports)? + "\n",
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["example", "check", "expected", "observed", "ok"])?;
                    for r in &reports {
                        for c in &r.checks {
                            w.write_record([&r.id, &c.name, &c.expected, &c.observed, &c.ok.to_string()])?;
                        }
                    }
                    String::from_utf8(w.into_inner()?)?
                }
            };
            emit(&output, &body)?;
            for r in reports.iter().filter(|r| !r.is_success()) {
                eprintln!("{}: {} diff(s)\n{}", r.id, r.diffs, r.diff());
            }
            Ok(ok)
        }
    }
}

fn verify(args: VerifyArgs) -> Result<bool> {
    if args.theorem.iter().any(|t| t == "list") {
        for t in registry() {
            println!("{:<28} {}", t.name, t.statement);
        }
        return Ok(true);
    }
    let mut descriptors = Vec::new();
    for family in &args.families {
        descriptors.push(format_components(&descriptor_from_flags(family, args.rank, args.m)?));
    }
    let parabolics = match args.parabolic.as_slice() {
        [one] if one == "all" => ParabolicSelection::All,
        [one] if one == "maximal" => ParabolicSelection::Maximal,
        lists => ParabolicSelection::Explicit(lists.iter().map(|p| parse_generators(p)).collect::<Result<_>>()?),
    };
    let config = SuiteConfig {
        descriptors,
        parabolics,
        theorems: args.theorem.clone(),
        guard: args.guard.guard,
        workers: args.workers,
        out: args.output.out.clone(),
        format: match args.output.format {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
        },
    };
    let result = run_suite(&config)?;
    let body = match config.format {
        ReportFormat::Json => result.to_json() + "\n",
        ReportFormat::Csv => suite_csv(&result)?,
    };
    emit(&args.output, &body)?;
    eprintln!("{} check(s), {} failure(s), {:.2?}", result.results.len(), result.failures, result.wall_clock);
    Ok(result.is_success())
}

fn parse_generators(text: &str) -> Result<Vec<usize>> {
    let gens = parse_word(text.trim().trim_start_matches(['[', '{']).trim_end_matches([']', '}']))?;
    if gens.is_empty() {
        bail!("empty parabolic generator list");
    }
    Ok(gens)
}

fn excess_csv(report: &ExcessReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "descriptor",
        "element",
        "length",
        "reflection_length",
        "excess",
        "reflection_excess",
        "J",
        "e_J",
        "E_J",
    ])?;
    let base = [
        report.descriptor.clone(),
        report.element.clone(),
        report.length.to_string(),
        report.reflection_length.to_string(),
        report.excess.to_string(),
        report.reflection_excess.to_string(),
    ];
    if report.parabolic.is_empty() {
        w.write_record(base.iter().cloned().chain([String::new(), String::new(), String::new()]))?;
    }
    for p in &report.parabolic {
        let j: Vec<String> = p.j.iter().map(|g| g.to_string()).collect();
        w.write_record(base.iter().cloned().chain([j.join(" "), p.e_j.to_string(), p.big_e_j.to_string()]))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn suite_csv(result: &SuiteResult) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["theorem", "descriptor", "expectation", "instances", "checked", "passed", "failed", "gaps"])?;
    for r in &result.results {
        let expectation = serde_json::to_value(r.expectation)?;
        w.write_record([
            r.theorem.clone(),
            r.descriptor.clone(),
            expectation.as_str().unwrap_or_default().to_string(),
            r.instances.to_string(),
            r.checked.to_string(),
            r.passed.to_string(),
            r.failed.to_string(),
            r.gaps.to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn emit(output: &OutputArgs, body: &str) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(body.as_bytes())?;
            Ok(())
        }
    }
}
