//! The `rspan` command line.
//!
//! Exit status is 0 when every verdict holds, 1 when some verdict fails and
//! 2 on usage or input errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::experiment::{run_suite, BaseSpec};
use crate::fragility::{all_fragilities, girth_bound};
use crate::generators::{gen_fragility_gap_gadget, triangle_deleted_spanner, GeneratorSpec};
use crate::graph::Graph;
use crate::io::{read_edge_list, write_edge_list_file};
use crate::report::{
    emit_report, histogram, CycleUnionSummary, PartitionSizes, Report, Sizes, Verdict,
};
use crate::resilient::{fragility_classes, make_resilient, verify_resilient};
use crate::spanners::{
    additive2_spanner, fault_tolerant_spanner, greedy_spanner, verify_fault_tolerance,
    verify_spanner, Spanner,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_VERDICT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "rspan",
    version,
    about = "Edge fragility, spanners and resilient spanner augmentation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated graph as an edge list.
    ///
    /// Families: cycle N, path N, complete N, grid R C, star L,
    /// random N M SEED [MAXW], random-2ec N M SEED [MAXW],
    /// intersection-complement K (alias i3k), gadget T.
    Gen(GenArgs),
    /// Per-edge fragility of a graph.
    Fragility(FragilityArgs),
    /// Build a classical spanner.
    Spanner(SpannerArgs),
    /// Augment a spanner until it is sigma-resilient.
    Resilient(ResilientArgs),
    /// Check a spanner file against its host graph.
    Verify(VerifyArgs),
    /// Run a batch experiment suite.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    family: String,
    params: Vec<String>,
    #[arg(short, long)]
    output: PathBuf,
    /// Companion spanner: the gadget's spanner, or the triangle-deleted
    /// subgraph of an intersection-complement graph.
    #[arg(long)]
    spanner_output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FragilityArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Also check the girth of the subgraph of edges more fragile than this.
    #[arg(long)]
    sigma: Option<u32>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("construction").required(true)))]
struct SpannerArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Greedy multiplicative t-spanner.
    #[arg(long, group = "construction", value_name = "T")]
    stretch: Option<u32>,
    /// Additive (+2) spanner of an unweighted graph.
    #[arg(long, group = "construction")]
    additive2: bool,
    /// f-edge fault-tolerant t-spanner.
    #[arg(long, group = "construction", num_args = 2, value_names = ["T", "F"])]
    fault_tolerant: Option<Vec<u32>>,
    /// Delete one edge of every triangle (intersection-complement inputs).
    #[arg(long, group = "construction")]
    triangle_deleted: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ResilientArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    sigma: u32,
    /// greedy:T, additive2, ft:T or ft:T:F. Defaults to greedy:SIGMA.
    #[arg(long)]
    base: Option<BaseSpec>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyMode {
    Spanner,
    Fault,
    Resilient,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    spanner: PathBuf,
    #[arg(long, value_enum)]
    mode: VerifyMode,
    /// key=value pairs: alpha, beta (spanner); t, f (fault); sigma (resilient).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    params: Vec<String>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    #[arg(long)]
    suite: String,
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    #[arg(long)]
    report: Option<PathBuf>,
}

/// Any failure that maps to exit status 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = Result<i32, UsageError>;

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Fragility(a) => fragility(a),
        Command::Spanner(a) => spanner(a),
        Command::Resilient(a) => resilient(a),
        Command::Verify(a) => verify(a),
        Command::Experiment(a) => experiment(a),
    };
    match outcome {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `rspan --help` for usage");
            EXIT_USAGE
        }
    }
}

fn load(path: &Path) -> Result<Graph, UsageError> {
    Ok(read_edge_list(path)?)
}

fn finish(report: &Report, target: Option<&Path>) -> Outcome {
    let text = emit_report(report);
    match target {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| UsageError(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAILED_VERDICT
    })
}

fn sizes(g: &Graph) -> Sizes {
    Sizes {
        vertices: g.n(),
        edges: g.m(),
        ..Sizes::default()
    }
}

fn spanner_comment(kind: &str, s: &Spanner) -> String {
    format!("{kind} alpha={} beta={}", s.alpha, s.beta)
}

fn gen(a: GenArgs) -> Outcome {
    if a.family == "gadget" {
        let t = match a.params.as_slice() {
            [t] => t
                .parse::<u32>()
                .map_err(|_| UsageError(format!("invalid stretch {t:?}")))?,
            _ => return Err(UsageError("gadget expects one parameter T".into())),
        };
        let gadget = gen_fragility_gap_gadget(t)?;
        write_edge_list_file(&a.output, &gadget.graph, Some(&format!("gadget {t}")))?;
        if let Some(path) = &a.spanner_output {
            let comment = format!(
                "{}\nedge {} host_fragility={} spanner_fragility={}",
                spanner_comment("fault-tolerant", &gadget.spanner),
                gadget.edge,
                gadget.host_fragility,
                gadget.spanner_fragility
            );
            write_edge_list_file(path, &gadget.spanner.subgraph, Some(&comment))?;
        }
        return Ok(EXIT_OK);
    }
    let spec = GeneratorSpec::parse(&a.family, &a.params)?;
    let g = spec.build()?;
    write_edge_list_file(&a.output, &g, Some(&spec.to_string()))?;
    if let Some(path) = &a.spanner_output {
        let s = match spec {
            GeneratorSpec::IntersectionComplement { .. } => triangle_deleted_spanner(&g)?,
            _ => {
                return Err(UsageError(
                    "--spanner-output is only available for gadget and intersection-complement"
                        .into(),
                ))
            }
        };
        write_edge_list_file(
            path,
            &s.subgraph,
            Some(&spanner_comment("triangle-deleted", &s)),
        )?;
    }
    Ok(EXIT_OK)
}

fn fragility(a: FragilityArgs) -> Outcome {
    let start = Instant::now();
    let g = load(&a.input)?;
    let fm = all_fragilities(&g);
    let mut report = Report::new("fragility");
    report.input = Some(a.input.display().to_string());
    report.sizes = sizes(&g);
    report.set_fragilities(&fm);
    if let Some(sigma) = a.sigma {
        report.params.sigma = Some(sigma);
        let bound = girth_bound(&g, sigma, &fm);
        report
            .verdicts
            .push(Verdict::new("girth_bound", bound.holds, &bound));
    }
    report.record_timing("total", start.elapsed());
    finish(&report, a.report.as_deref())
}

fn spanner(a: SpannerArgs) -> Outcome {
    let start = Instant::now();
    let g = load(&a.input)?;
    let mut report = Report::new("spanner");
    report.input = Some(a.input.display().to_string());
    let (s, kind) = if let Some(t) = a.stretch {
        report.params.stretch = Some(f64::from(t));
        (greedy_spanner(&g, t)?, "greedy")
    } else if a.additive2 {
        (additive2_spanner(&g)?, "additive2")
    } else if let Some(tf) = &a.fault_tolerant {
        report.params.stretch = Some(f64::from(tf[0]));
        report.params.failures = Some(tf[1] as usize);
        (
            fault_tolerant_spanner(&g, tf[0], tf[1] as usize)?,
            "fault-tolerant",
        )
    } else {
        (triangle_deleted_spanner(&g)?, "triangle-deleted")
    };
    report.params.base = Some(kind.to_owned());
    report.params.alpha = Some(s.alpha);
    report.params.beta = Some(s.beta);
    report.sizes = Sizes {
        spanner_edges: Some(s.size()),
        ..sizes(&g)
    };
    let distortion = verify_spanner(&g, &s.subgraph, s.alpha, s.beta)?;
    report
        .verdicts
        .push(Verdict::new("spanner", distortion.holds, &distortion));
    if let Some(tf) = &a.fault_tolerant {
        let ft = verify_fault_tolerance(&g, &s.subgraph, f64::from(tf[0]), tf[1] as usize)?;
        report
            .verdicts
            .push(Verdict::new("fault_tolerance", ft.holds, &ft));
    }
    report.set_fragilities(&all_fragilities(&s.subgraph));
    report.fragilities.clear();
    if let Some(path) = &a.output {
        write_edge_list_file(path, &s.subgraph, Some(&spanner_comment(kind, &s)))?;
    }
    report.record_timing("total", start.elapsed());
    finish(&report, a.report.as_deref())
}

fn resilient(a: ResilientArgs) -> Outcome {
    let start = Instant::now();
    let g = load(&a.input)?;
    let sigma = a.sigma;
    let requested = a.base.unwrap_or(BaseSpec::Greedy(sigma));
    // A base whose alpha + beta exceeds sigma is replaced by a greedy
    // sigma-spanner.
    let base = if f64::from(sigma) < requested.distortion_sum() {
        BaseSpec::Greedy(sigma)
    } else {
        requested
    };
    let s = base.build(&g)?;
    let out = make_resilient(&g, &s, sigma)?;
    let built = start.elapsed();
    let r = &out.resilient;

    let mut report = Report::new("resilient");
    report.input = Some(a.input.display().to_string());
    report.params.sigma = Some(sigma);
    report.params.alpha = Some(r.alpha);
    report.params.beta = Some(r.beta);
    report.params.base = Some(if base == requested {
        base.to_string()
    } else {
        format!("{base} (requested {requested})")
    });
    report.sizes = Sizes {
        spanner_edges: Some(s.size()),
        resilient_edges: Some(r.size()),
        added_edges: Some(out.added.len()),
        ..sizes(&g)
    };
    report.added_edges = Some(out.added.len());

    let host = all_fragilities(&g);
    report.fragility_histogram = histogram(&out.base_fragility);
    report.host_fragility_histogram = histogram(&host);
    report.partition = Some(PartitionSizes::from(&fragility_classes(
        &g,
        &s.subgraph,
        sigma,
        &host,
    )));
    report.cycle_union = Some(CycleUnionSummary::new(&out.cycle_stats(), g.n()));

    let resilience = verify_resilient(&g, &r.subgraph, sigma)?;
    let distortion = verify_spanner(&g, &r.subgraph, r.alpha, r.beta)?;
    report.resilient = Some(resilience.holds);
    report
        .verdicts
        .push(Verdict::bare("resilient", resilience.holds));
    report
        .verdicts
        .push(Verdict::new("spanner", distortion.holds, &distortion));
    report.violations = resilience.violations;
    if let Some(path) = &a.output {
        let comment = format!("{}\nsigma={sigma}", spanner_comment("resilient", r));
        write_edge_list_file(path, &r.subgraph, Some(&comment))?;
    }
    report.record_timing("construct", built);
    report.record_timing("total", start.elapsed());
    finish(&report, a.report.as_deref())
}

fn param<T: std::str::FromStr>(
    pairs: &[(String, String)],
    key: &str,
) -> Result<Option<T>, UsageError> {
    match pairs.iter().rev().find(|(k, _)| k == key) {
        Some((_, v)) => v
            .parse::<T>()
            .map(Some)
            .map_err(|_| UsageError(format!("invalid value {v:?} for parameter {key}"))),
        None => Ok(None),
    }
}

fn require<T>(value: Option<T>, key: &str) -> Result<T, UsageError> {
    value.ok_or_else(|| UsageError(format!("missing parameter {key}")))
}

fn verify(a: VerifyArgs) -> Outcome {
    let start = Instant::now();
    let g = load(&a.input)?;
    let s = load(&a.spanner)?;
    let pairs: Vec<(String, String)> = a
        .params
        .iter()
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_owned(), v.trim().to_owned()))
                .ok_or_else(|| UsageError(format!("parameter {p:?} is not key=value")))
        })
        .collect::<Result<_, _>>()?;
    let allowed: &[&str] = match a.mode {
        VerifyMode::Spanner => &["alpha", "beta"],
        VerifyMode::Fault => &["t", "f"],
        VerifyMode::Resilient => &["sigma"],
    };
    if let Some((k, _)) = pairs.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        return Err(UsageError(format!("unknown parameter {k} for this mode")));
    }

    let mut report = Report::new("verify");
    report.input = Some(format!("{} {}", a.input.display(), a.spanner.display()));
    report.sizes = Sizes {
        spanner_edges: Some(s.m()),
        ..sizes(&g)
    };
    match a.mode {
        VerifyMode::Spanner => {
            let alpha: f64 = require(param(&pairs, "alpha")?, "alpha")?;
            let beta: f64 = param(&pairs, "beta")?.unwrap_or(0.0);
            report.params.alpha = Some(alpha);
            report.params.beta = Some(beta);
            let d = verify_spanner(&g, &s, alpha, beta)?;
            report.verdicts.push(Verdict::new("spanner", d.holds, &d));
        }
        VerifyMode::Fault => {
            let t: f64 = require(param(&pairs, "t")?, "t")?;
            let f: usize = param(&pairs, "f")?.unwrap_or(1);
            report.params.stretch = Some(t);
            report.params.failures = Some(f);
            let ft = verify_fault_tolerance(&g, &s, t, f)?;
            report
                .verdicts
                .push(Verdict::new("fault_tolerance", ft.holds, &ft));
        }
        VerifyMode::Resilient => {
            let sigma: u32 = require(param(&pairs, "sigma")?, "sigma")?;
            report.params.sigma = Some(sigma);
            let res = verify_resilient(&g, &s, sigma)?;
            report.resilient = Some(res.holds);
            report.verdicts.push(Verdict::bare("resilient", res.holds));
            report.violations = res.violations;
        }
    }
    report.record_timing("total", start.elapsed());
    finish(&report, a.report.as_deref())
}

fn experiment(a: ExperimentArgs) -> Outcome {
    let report = run_suite(&a.suite, &a.sizes, a.seeds)?;
    finish(&report, a.report.as_deref())
}
