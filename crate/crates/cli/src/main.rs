//! `topodiag`: build interconnection networks, measure their parameters and
//! check the extra-connectivity statements against them.
//!
//! Exit codes: 0 everything holds, 1 a violation was found, 2 a search ran out
//! of budget, 3 invalid input or an inapplicable check.

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use topodiag_core::analysis::{analyze, AnalysisOptions, CheckKind};
use topodiag_core::edgelist::{parse_edge_list, write_edge_list};
use topodiag_core::lemmas::{run_family_lemma, run_generic_lemma, LemmaFamily, LemmaId};
use topodiag_core::theorem::{check_family, default_instances, prediction, TheoremOptions};
use topodiag_core::{
    build, check_conditions, configure_threads, pessimistic_diagnosability, Error, Family, Graph, LemmaVerdict,
    Report, Status, TheoremReport, TopologySpec, DEFAULT_BUDGET,
};

#[derive(Parser, Debug)]
#[command(name = "topodiag", version, about = "Interconnection-network connectivity and diagnosability")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Node budget for each exhaustive search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Worker threads.
    #[arg(long, global = true, env = "TOPODIAG_THREADS", value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a topology and write its edge list.
    Gen(Source),
    /// Measure order, degree, κ, girth, cn, l and κ₁.
    Analyze(Source),
    /// Compute the pessimistic diagnosability t_p.
    Tp(Source),
    /// Check a lemma or the main theorem's conditions.
    Verify(VerifyArgs),
    /// Predicted against measured t_p and κ₁ for every family.
    Table,
}

#[derive(Args, Debug, Default)]
struct Source {
    /// Topology family: ag, an, bc, bc-random, qnk, splitstar, gamma, 2tree, bp.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Arity of the k-ary n-cube.
    #[arg(long)]
    k: Option<usize>,
    /// Transposition tree: "star", "path" or edges such as "1-2,2-3".
    #[arg(long)]
    tree: Option<String>,
    /// 2-tree: "path", "star", "fan" or attachments such as "4:1-2,5:2-3".
    #[arg(long)]
    twotree: Option<String>,
    /// Seed for bc-random.
    #[arg(long)]
    seed: Option<u64>,
    /// Read the graph from an edge-list file instead.
    #[arg(long, conflicts_with_all = ["family", "n", "k", "tree", "twotree", "seed"])]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["lemma", "theorem"]))]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    /// Lemma id: lem-3.1, lem-3.3, exp-<FAMILY>, cut-<FAMILY> or theorem.
    #[arg(long)]
    lemma: Option<String>,
    /// Check the main theorem's four conditions.
    #[arg(long)]
    theorem: bool,
}

/// Process outcome, ordered so the most severe wins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Outcome {
    Ok = 0,
    Violation = 1,
    Exhausted = 2,
    Invalid = 3,
}

fn outcome_of(statuses: impl IntoIterator<Item = Status>) -> Outcome {
    let statuses: Vec<Status> = statuses.into_iter().collect();
    if statuses.contains(&Status::Violated) {
        Outcome::Violation
    } else if statuses.contains(&Status::BudgetExhausted) {
        Outcome::Exhausted
    } else if !statuses.is_empty() && statuses.iter().all(|&s| s == Status::Inapplicable) {
        Outcome::Invalid
    } else {
        Outcome::Ok
    }
}

fn error_outcome(err: &anyhow::Error) -> Outcome {
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded(_)) => Outcome::Exhausted,
        Some(Error::FamilyMismatch { .. }) => Outcome::Violation,
        _ => Outcome::Invalid,
    }
}

struct Out {
    format: Format,
    path: Option<PathBuf>,
}

impl Out {
    fn emit(&self, text: &str) -> anyhow::Result<()> {
        let mut text = text.to_string();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &self.path {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn json(&self) -> bool {
        self.format == Format::Json
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Outcome::Invalid as u8 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        configure_threads(threads as usize);
    }
    let out = Out {
        format: cli.format,
        path: cli.output.clone(),
    };
    match run(&cli, &out) {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(error_outcome(&err) as u8)
        }
    }
}

fn run(cli: &Cli, out: &Out) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Gen(src) => cmd_gen(src, out),
        Command::Analyze(src) => cmd_analyze(src, cli.budget, out),
        Command::Tp(src) => cmd_tp(src, cli.budget, out),
        Command::Verify(args) => cmd_verify(args, cli.budget, out),
        Command::Table => cmd_table(cli.budget, out),
    }
}

fn spec_from(src: &Source, family: Family, n: usize) -> anyhow::Result<TopologySpec> {
    Ok(TopologySpec::from_parts(
        family,
        n,
        src.k,
        src.tree.as_deref(),
        src.twotree.as_deref(),
        src.seed,
    )?)
}

/// The graph named by `--family`/`--n` or `--input`.
fn load(src: &Source) -> anyhow::Result<(Option<TopologySpec>, Graph)> {
    if let Some(path) = &src.input {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok((None, parse_edge_list(&text)?));
    }
    let family: Family = src
        .family
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("give --family and --n, or --input".into()))?
        .parse()?;
    let n = src.n.ok_or_else(|| Error::InvalidArgument("--n is required".into()))?;
    let spec = spec_from(src, family, n)?;
    let g = build(&spec)?;
    Ok((Some(spec), g))
}

fn cmd_gen(src: &Source, out: &Out) -> anyhow::Result<Outcome> {
    if src.input.is_some() {
        bail!(Error::InvalidArgument("gen builds from --family, not --input".into()));
    }
    let (spec, g) = load(src)?;
    let spec = spec.expect("gen always has a spec");
    let summary = json!({
        "name": spec.name(),
        "order": g.order(),
        "edges": g.edge_count(),
        "regular_degree": g.regular_degree(),
    });
    let summary_text = match out.format {
        Format::Json => serde_json::to_string_pretty(&summary)?,
        Format::Text => render::gen_summary(&spec, &g),
    };
    match &out.path {
        Some(path) => {
            fs::write(path, write_edge_list(&g)).with_context(|| format!("writing {}", path.display()))?;
            println!("{summary_text}");
        }
        None => {
            print!("{}", write_edge_list(&g));
            eprintln!("{summary_text}");
        }
    }
    Ok(Outcome::Ok)
}

fn cmd_analyze(src: &Source, budget: u64, out: &Out) -> anyhow::Result<Outcome> {
    let (spec, g) = load(src)?;
    let opts = AnalysisOptions {
        budget,
        ..AnalysisOptions::default()
    };
    let analysis = analyze(&g, &opts)?;
    let report = Report::new(spec.as_ref(), &analysis);
    if out.json() {
        out.emit(&report.to_json())?;
    } else {
        out.emit(&render::analysis(spec.as_ref(), &analysis))?;
    }
    Ok(if analysis.budget_exhausted {
        Outcome::Exhausted
    } else {
        Outcome::Ok
    })
}

fn cmd_tp(src: &Source, budget: u64, out: &Out) -> anyhow::Result<Outcome> {
    let (spec, g) = load(src)?;
    let result = pessimistic_diagnosability(&g, budget)?;
    if out.json() {
        let value = json!({
            "family": spec.as_ref().map(topodiag_core::report::family_tag),
            "n": spec.as_ref().map(TopologySpec::n),
            "order": g.order(),
            "tp": result.tp,
            "kappa": result.kappa,
            "not_even_one": result.not_even_one,
            "failure": result.failure,
            "searched": result.searched,
        });
        out.emit(&serde_json::to_string_pretty(&value)?)?;
    } else {
        out.emit(&render::tp(spec.as_ref(), &result))?;
    }
    Ok(Outcome::Ok)
}

fn family_for_lemma(f: LemmaFamily, seeded: bool) -> Family {
    match f {
        LemmaFamily::Ag => Family::AlternatingGroupGraph,
        LemmaFamily::An => Family::AlternatingGroupNetwork,
        LemmaFamily::Bc if seeded => Family::BcRandom,
        LemmaFamily::Bc => Family::BcHypercube,
        LemmaFamily::Qnk => Family::KAryCube,
        LemmaFamily::SplitStar => Family::SplitStar,
        LemmaFamily::Gamma => Family::TranspositionTree,
        LemmaFamily::TwoTree => Family::TwoTree,
        LemmaFamily::Bp => Family::BurntPancake,
    }
}

/// The instance a family lemma runs on: the flags if given, else the lemma's default.
fn lemma_spec(id: LemmaId, lf: LemmaFamily, src: &Source) -> anyhow::Result<TopologySpec> {
    if src.input.is_some() {
        bail!(Error::InvalidArgument(format!("{id} runs on a family instance, not --input")));
    }
    let family = match &src.family {
        Some(name) => name.parse::<Family>()?,
        None => family_for_lemma(lf, src.seed.is_some()),
    };
    let default = id.default_spec().expect("family lemmas have defaults");
    let n = src.n.unwrap_or(default.n());
    let mut src_k = src.k;
    if family == Family::KAryCube && src_k.is_none() {
        src_k = default.arity().or(Some(3));
    }
    Ok(TopologySpec::from_parts(
        family,
        n,
        src_k,
        src.tree.as_deref(),
        src.twotree.as_deref(),
        src.seed,
    )?)
}

fn cmd_verify(args: &VerifyArgs, budget: u64, out: &Out) -> anyhow::Result<Outcome> {
    let id = match &args.lemma {
        Some(text) => text.parse::<LemmaId>()?,
        None => LemmaId::Theorem,
    };
    if args.theorem && args.lemma.is_some() && id != LemmaId::Theorem {
        bail!(Error::InvalidArgument("--theorem conflicts with --lemma".into()));
    }
    let verdicts = match id {
        LemmaId::Theorem => return verify_theorem(&args.source, budget, out),
        LemmaId::PairBound | LemmaId::ConnectivityBoundary => {
            let (spec, g) = load(&args.source)?;
            let mut v = run_generic_lemma(id, &g, budget, args.source.seed.unwrap_or(0))?;
            if let Some(spec) = &spec {
                v.id = format!("{}({})", v.id, spec.name());
            }
            vec![v]
        }
        LemmaId::Expansion(lf) | LemmaId::CutStructure(lf) => {
            let spec = lemma_spec(id, lf, &args.source)?;
            let g = build(&spec)?;
            run_family_lemma(id, &spec, &g, budget)?
        }
    };
    emit_verdicts(&verdicts, out)?;
    Ok(outcome_of(verdicts.iter().map(|v| v.status)))
}

fn emit_verdicts(verdicts: &[LemmaVerdict], out: &Out) -> anyhow::Result<()> {
    if out.json() {
        out.emit(&serde_json::to_string_pretty(verdicts)?)
    } else {
        out.emit(&verdicts.iter().map(render::verdict).collect::<Vec<_>>().join("\n"))
    }
}

/// Summary verdict for the conclusion `t_p = 2k - 2 - l = κ₁`.
fn theorem_verdict(name: &str, r: &TheoremReport) -> LemmaVerdict {
    let mut v = LemmaVerdict::new(format!("theorem({name})"), CheckKind::Arithmetic, r.predicted);
    v.measured = r.tp_computed;
    let conds: Vec<Status> = r.conditions().iter().map(|c| c.status).collect();
    let agrees = r.tp_computed.is_none_or(|tp| tp == r.predicted)
        && r.kappa1_upper.is_none_or(|k1| k1 <= r.predicted);
    v.status = if !r.applicable {
        Status::Inapplicable
    } else if r.certified && !agrees {
        Status::Violated
    } else if r.certified {
        Status::Holds
    } else {
        match outcome_of(conds) {
            Outcome::Exhausted => Status::BudgetExhausted,
            _ => Status::Violated,
        }
    };
    let mut note = vec![format!(
        "k = {}, l = {}, predicted {}, t_p {}, kappa1 <= {}",
        r.k,
        r.l,
        r.predicted,
        r.tp_computed.map_or("-".into(), |t| t.to_string()),
        r.kappa1_upper.map_or("-".into(), |t| t.to_string()),
    )];
    if !r.note.is_empty() {
        note.push(r.note.clone());
    }
    v.note = note.join("; ");
    v
}

fn verify_theorem(src: &Source, budget: u64, out: &Out) -> anyhow::Result<Outcome> {
    let (spec, g) = load(src)?;
    let opts = TheoremOptions {
        budget,
        ..TheoremOptions::default()
    };
    let report = match &spec {
        Some(spec) => check_family(spec, &g, &opts)?,
        None => check_conditions(&g, &opts)?,
    };
    let name = spec.as_ref().map_or_else(|| "input".to_string(), TopologySpec::name);
    let mut verdicts: Vec<LemmaVerdict> = report.conditions().into_iter().cloned().collect();
    let summary = theorem_verdict(&name, &report);
    let outcome = match summary.status {
        Status::Holds => Outcome::Ok,
        Status::Violated => Outcome::Violation,
        Status::BudgetExhausted => Outcome::Exhausted,
        Status::Inapplicable => Outcome::Invalid,
    };
    verdicts.push(summary);
    emit_verdicts(&verdicts, out)?;
    Ok(outcome)
}

fn cmd_table(budget: u64, out: &Out) -> anyhow::Result<Outcome> {
    let mut rows = Vec::new();
    let mut outcome = Outcome::Ok;
    for spec in default_instances() {
        let g = build(&spec)?;
        let p = prediction(&spec);
        let tp = match pessimistic_diagnosability(&g, budget) {
            Ok(r) => Some(r.tp),
            Err(Error::BudgetExceeded(_)) => None,
            Err(e) => return Err(anyhow!(e)),
        };
        let (cut, _, exhausted) = topodiag_core::analysis::kappa_h_upper(&g, 1, 4, budget);
        let kappa1 = cut.map(|c| c.size);
        let complete = tp.is_some() && !exhausted;
        let matched = tp == Some(p.value) && kappa1 == Some(p.value);
        outcome = outcome.max(if !complete {
            Outcome::Exhausted
        } else if !matched {
            Outcome::Violation
        } else {
            Outcome::Ok
        });
        rows.push(render::TableRow {
            label: render::table_label(&spec),
            name: spec.name(),
            formula: p.formula,
            predicted: p.value,
            tp,
            kappa1_upper: kappa1,
            matched,
        });
    }
    if out.json() {
        let value: Vec<_> = rows
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "formula": r.formula,
                    "predicted": r.predicted,
                    "tp": r.tp,
                    "kappa1_upper": r.kappa1_upper,
                    "match": r.matched,
                })
            })
            .collect();
        out.emit(&serde_json::to_string_pretty(&value)?)?;
    } else {
        out.emit(&rows.iter().map(render::table_row).collect::<Vec<_>>().join("\n"))?;
    }
    Ok(outcome)
}
