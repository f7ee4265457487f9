//! `firecontain`: generate graphs, run fires, classify starts, audit the
//! charge rules, certify surviving rates and draw traces.

mod config;
mod render;

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use firecontain::detect::classify::{classify, ClassificationReport, ClassifyOptions, Context, Mode};
use firecontain::discharge::{discharge, ChargeContext, Constants};
use firecontain::fire::search::{sn_exact, DEFAULT_NODE_LIMIT};
use firecontain::fire::{Schedule, SimTrace};
use firecontain::graph::augment::{augment_maximal_planar, augment_maximal_triangle_free};
use firecontain::graph::format::{encode_graph6, encode_planar_code, encode_rotation_json, parse, Format};
use firecontain::graph::random::{random_girth5, random_triangle_free, random_triangulation};
use firecontain::rates::{certify_bound, surviving_rate_exact, surviving_rate_lower_bound, CertifyOptions, RateReport, Theorem, Verdict};
use firecontain::strategy::{
    theorem_dispatch, ConfigStrategy, DegreeLocal, LatticeStrategy, NullStrategy, ProtectionPlan, Strategy,
};
use firecontain::{generate, EmbeddedGraph, Error, FamilySpec, Rational, Result, Scalar};

use config::Options;

#[derive(Parser)]
#[command(name = "firecontain", version, about = "Firefighter containment on embedded plane graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Subcommand, Clone, Copy, Debug)]
enum Command {
    /// Write a graph in the requested format.
    Generate,
    /// Run one strategy from one start and print the trace.
    Simulate,
    /// Exact sn from one start, or from every start.
    Solve,
    /// Label every start X or Y for a context.
    Classify,
    /// Run and audit the charge rules.
    Discharge,
    /// Surviving rate, exact or from the class strategy, or a theorem check.
    Rate,
    /// One SVG per round of a strategy's trace.
    Render,
}

/// How a successful run ended.
enum Outcome {
    Done,
    /// An audit or certification ran and failed.
    Failed,
    /// Some search hit its node limit; the output holds bounds.
    Partial,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.opts.resolve().and_then(|o| run(cli.command, &o)) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Ok(Outcome::Partial) => ExitCode::from(3),
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            ExitCode::from(if matches!(e, Error::Timeout) { 3 } else { 2 })
        }
    }
}

fn run(command: Command, o: &Options) -> Result<Outcome> {
    match command {
        Command::Generate => cmd_generate(o),
        Command::Simulate => cmd_simulate(o),
        Command::Solve => cmd_solve(o),
        Command::Classify => cmd_classify(o),
        Command::Discharge => cmd_discharge(o),
        Command::Rate => cmd_rate(o),
        Command::Render => cmd_render(o),
    }
}

struct Instance {
    id: String,
    graph: EmbeddedGraph,
    layout: Vec<(f64, f64)>,
    center: usize,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameter(msg.into())
}

fn load(o: &Options) -> Result<Instance> {
    match (&o.input, &o.family) {
        (Some(path), None) => {
            let format = match &o.format {
                Some(f) => f.parse()?,
                None => match path.extension().and_then(|e| e.to_str()) {
                    Some("g6") => Format::Graph6,
                    Some("pc" | "plc") => Format::PlanarCode,
                    _ => Format::RotationJson,
                },
            };
            let bytes = std::fs::read(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
            let index = o.index.unwrap_or(0);
            let mut graphs = parse(&bytes, format, o.allow_unverified)?;
            if index >= graphs.len() {
                return Err(bad(format!("{} holds {} graphs, asked for #{index}", path.display(), graphs.len())));
            }
            Ok(Instance {
                id: format!("{}#{index}", path.display()),
                graph: graphs.swap_remove(index),
                layout: Vec::new(),
                center: 0,
            })
        }
        (None, Some(spec)) => {
            let seed = o.seed.unwrap_or(0);
            let random = |n: &str| n.parse::<usize>().map_err(|_| bad(format!("expected a size in '{spec}'")));
            let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
            let graph = match name {
                "random_triangulation" => random_triangulation(random(arg)?, seed)?,
                "random_triangle_free" => random_triangle_free(random(arg)?, seed)?,
                "random_girth5" => random_girth5(random(arg)?, seed)?,
                _ => {
                    let fam: FamilySpec = spec.parse()?;
                    return Ok(Instance { id: fam.to_string(), graph: generate(&fam)?, layout: fam.layout(), center: fam.center() });
                }
            };
            Ok(Instance { id: format!("{spec}@{seed}"), graph, layout: Vec::new(), center: 0 })
        }
        _ => Err(bad("give exactly one of --input and --family")),
    }
}

fn context(o: &Options) -> Result<Option<Context>> {
    o.context.as_deref().map(str::parse).transpose()
}

fn need_context(o: &Options) -> Result<Context> {
    context(o)?.ok_or_else(|| bad("this command needs --context"))
}

fn schedule(o: &Options, fallback: Option<Schedule>) -> Result<Schedule> {
    match (o.k, &o.schedule) {
        (Some(_), Some(_)) => Err(bad("give --k or --schedule, not both")),
        (Some(k), None) => Ok(Schedule::constant(k)),
        (None, Some(s)) => s.parse(),
        (None, None) => fallback.ok_or_else(|| bad("this command needs --k or --schedule")),
    }
}

fn node_limit(o: &Options) -> u64 {
    o.node_limit.unwrap_or(DEFAULT_NODE_LIMIT)
}

fn classify_options(o: &Options, default: Mode) -> Result<ClassifyOptions> {
    let mut opts = ClassifyOptions::new(match &o.mode {
        Some(m) => m.parse()?,
        None => default,
    });
    if let Some(limit) = o.node_limit {
        opts.node_limit = limit;
    }
    Ok(opts)
}

/// The graph the context's machinery runs on, augmented when asked.
fn host(inst: &Instance, ctx: Context, o: &Options) -> Result<EmbeddedGraph> {
    if !o.augment {
        return Ok(inst.graph.clone());
    }
    match ctx {
        Context::Planar => augment_maximal_planar(&inst.graph),
        Context::TriangleFree => augment_maximal_triangle_free(&inst.graph),
        Context::Girth5 => Ok(inst.graph.clone()),
    }
}

fn emit(o: &Options, name: &str, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match &o.out {
        Some(dir) => write_file(dir, &format!("{name}.json"), text.as_bytes()),
        None => stdout(format!("{text}\n").as_bytes()),
    }
}

/// Writes to stdout; a reader that hung up early is not an error.
fn stdout(bytes: &[u8]) -> Result<()> {
    use std::io::{ErrorKind, Write};
    match std::io::stdout().lock().write_all(bytes) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(bad(format!("cannot write output: {e}"))),
        _ => Ok(()),
    }
}

fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| bad(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, bytes).map_err(|e| bad(format!("cannot write {}: {e}", path.display())))
}

fn cmd_generate(o: &Options) -> Result<Outcome> {
    let inst = load(o)?;
    let format = match &o.format {
        Some(f) => f.parse()?,
        None => Format::RotationJson,
    };
    let (name, bytes) = match format {
        Format::RotationJson => ("graph.json", (encode_rotation_json(&inst.graph) + "\n").into_bytes()),
        Format::Graph6 => ("graph.g6", (encode_graph6(&inst.graph) + "\n").into_bytes()),
        Format::PlanarCode => ("graph.pc", encode_planar_code(std::slice::from_ref(&inst.graph))?),
    };
    match &o.out {
        Some(dir) => write_file(dir, name, &bytes)?,
        None => stdout(&bytes)?,
    }
    Ok(Outcome::Done)
}

#[derive(Serialize)]
struct SimulateOutput {
    instance: String,
    strategy: String,
    burn_bound: Option<usize>,
    bound_met: bool,
    burned: usize,
    saved: usize,
    trace: SimTrace,
}

/// Plans and simulates the strategy named by `--strategy`.
fn strategy_trace(o: &Options, inst: &Instance) -> Result<(ProtectionPlan, SimTrace, bool)> {
    let g = &inst.graph;
    let start = o.start.unwrap_or(inst.center);
    let name = o.strategy.as_deref().unwrap_or("null");
    let ctx = context(o)?;
    let sched = schedule(o, ctx.map(|c| c.schedule()))?;
    let plan = match name {
        "null" => NullStrategy.plan(g, start, sched)?,
        "degree_local" => DegreeLocal::default().plan(g, start, sched)?,
        "hex_containment" => LatticeStrategy::hex().plan(g, start, sched)?,
        "rect_containment" => LatticeStrategy::rect().plan(g, start, sched)?,
        "config" => ConfigStrategy::new(None).plan(g, start, sched)?,
        "dispatch" => {
            let ctx = need_context(o)?;
            if sched != ctx.schedule() {
                return Err(bad(format!("{ctx} dispatch runs with schedule {}", ctx.schedule())));
            }
            let report = classify(g, ctx, classify_options(o, Mode::Exact)?)?;
            theorem_dispatch(g, &report, start)?
        }
        "exact" => {
            let r = sn_exact(g, start, sched, node_limit(o))?;
            let plan = ProtectionPlan {
                strategy: "exact".into(),
                start,
                schedule: sched,
                rounds: r.trace.protections(),
                burn_bound: None,
            };
            return Ok((plan, r.trace, r.optimal));
        }
        other => return Err(bad(format!("unknown strategy '{other}'"))),
    };
    let trace = plan.simulate(g)?;
    Ok((plan, trace, true))
}

fn cmd_simulate(o: &Options) -> Result<Outcome> {
    let inst = load(o)?;
    let (plan, trace, complete) = strategy_trace(o, &inst)?;
    let out = SimulateOutput {
        instance: inst.id,
        bound_met: plan.burn_bound.is_none_or(|b| trace.burned_total() <= b),
        burned: trace.burned_total(),
        saved: trace.saved,
        strategy: plan.strategy,
        burn_bound: plan.burn_bound,
        trace,
    };
    emit(o, "simulate", &out)?;
    Ok(if !complete {
        Outcome::Partial
    } else if out.bound_met {
        Outcome::Done
    } else {
        Outcome::Failed
    })
}

#[derive(Serialize)]
struct SolveEntry {
    start: usize,
    sn: usize,
    optimal: bool,
    nodes: u64,
    trace: SimTrace,
}

fn cmd_solve(o: &Options) -> Result<Outcome> {
    let inst = load(o)?;
    let sched = schedule(o, None)?;
    let starts: Vec<usize> = match o.start {
        Some(s) => vec![s],
        None => (0..inst.graph.n()).collect(),
    };
    let mut entries = Vec::with_capacity(starts.len());
    for s in starts {
        let r = sn_exact(&inst.graph, s, sched, node_limit(o))?;
        entries.push(SolveEntry { start: s, sn: r.saved, optimal: r.optimal, nodes: r.nodes, trace: r.trace });
    }
    let complete = entries.iter().all(|e| e.optimal);
    emit(o, "solve", &json!({ "instance": inst.id, "schedule": sched, "complete": complete, "starts": entries }))?;
    Ok(if complete { Outcome::Done } else { Outcome::Partial })
}

fn classified(o: &Options, inst: &Instance, default: Mode) -> Result<(EmbeddedGraph, ClassificationReport)> {
    let ctx = need_context(o)?;
    let g = host(inst, ctx, o)?;
    let report = classify(&g, ctx, classify_options(o, default)?)?;
    Ok((g, report))
}

fn cmd_classify(o: &Options) -> Result<Outcome> {
    let inst = load(o)?;
    let (_, report) = classified(o, &inst, Mode::Exact)?;
    emit(o, "classify", &report)?;
    Ok(if report.unknown_count() > 0 { Outcome::Partial } else { Outcome::Done })
}

fn parse_rational(flag: &str, text: &str) -> Result<Rational> {
    Rational::parse(text).ok_or_else(|| bad(format!("--{flag} expects p/q, got '{text}'")))
}

fn cmd_discharge(o: &Options) -> Result<Outcome> {
    let inst = load(o)?;
    let (g, report) = classified(o, &inst, Mode::Exact)?;
    let charge_context = match report.context {
        Context::Planar => ChargeContext::Planar,
        Context::TriangleFree => ChargeContext::TriangleFree,
        Context::Girth5 => return Err(Error::WrongContext("girth5 has no charge rules".into())),
    };
    let mut constants = Constants::<Rational>::for_context(charge_context);
    if let Some(a) = &o.alpha {
        constants.alpha = parse_rational("alpha", a)?;
    }
    if let Some(b) = &o.beta {
        constants.beta = parse_rational("beta", b)?;
    }
    let audit = discharge(&g, &report, Some(constants))?;
    emit(o, "discharge", &audit)?;
    Ok(if audit.passed() { Outcome::Done } else { Outcome::Failed })
}

fn cmd_rate(o: &Options) -> Result<Outcome> {
    let inst = load(o)?;
    let report: RateReport<Rational> = if let Some(t) = &o.theorem {
        let theorem: Theorem = t.parse()?;
        let mut opts = CertifyOptions { classify: classify_options(o, Mode::Exact)?, ..CertifyOptions::default() };
        if let Some(limit) = o.node_limit {
            opts.node_limit = limit;
        }
        let g = if o.augment && theorem == Theorem::Planar43 { augment_maximal_planar(&inst.graph)? } else { inst.graph.clone() };
        if let Some(s) = schedule(o, Some(theorem.schedule())).ok().filter(|s| *s != theorem.schedule()) {
            return Err(bad(format!("{theorem} is stated for schedule {}, not {s}", theorem.schedule())));
        }
        certify_bound(&inst.id, &g, theorem, opts)?
    } else {
        // a context asks for the class strategy's bound, otherwise solve exactly
        match context(o)? {
            Some(_) => {
                let (g, classes) = classified(o, &inst, Mode::Exact)?;
                surviving_rate_lower_bound(&inst.id, &g, &classes)?
            }
            None => surviving_rate_exact(&inst.id, &inst.graph, schedule(o, None)?, node_limit(o))?,
        }
    };
    if o.csv {
        let line = format!("{}\n{}\n", RateReport::<Rational>::CSV_HEADER, report.csv_row());
        match &o.out {
            Some(dir) => write_file(dir, "rate.csv", line.as_bytes())?,
            None => stdout(line.as_bytes())?,
        }
    } else {
        emit(o, "rate", &report)?;
    }
    Ok(match report.verdict {
        Some(Verdict::Fail) => Outcome::Failed,
        _ if !report.complete => Outcome::Partial,
        _ => Outcome::Done,
    })
}

fn cmd_render(o: &Options) -> Result<Outcome> {
    let dir = o.out.clone().ok_or_else(|| bad("render needs --out"))?;
    let inst = load(o)?;
    let (plan, trace, complete) = strategy_trace(o, &inst)?;
    let pos = render::layout(&inst.graph, inst.layout.clone());
    let frames = render::frames(&inst.graph, &trace, &pos);
    let mut files = Vec::with_capacity(frames.len());
    for (i, svg) in frames.iter().enumerate() {
        let name = format!("round_{i:02}.svg");
        write_file(&dir, &name, svg.as_bytes())?;
        files.push(name);
    }
    let summary = json!({
        "instance": inst.id,
        "strategy": plan.strategy,
        "burned": trace.burned_total(),
        "saved": trace.saved,
        "frames": files,
    });
    stdout(format!("{}\n", serde_json::to_string_pretty(&summary)?).as_bytes())?;
    Ok(if complete { Outcome::Done } else { Outcome::Partial })
}
