//! Batch experiments over generated graphs.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

use crate::fragility::{all_fragilities, fragility_oracle, girth_bound};
use crate::generators::{random_connected, GeneratorError};
use crate::graph::Graph;
use crate::report::{CycleUnionSummary, Report, RunRecord, Verdict};
use crate::resilient::{make_resilient, verify_resilient, ResilientError};
use crate::spanners::{
    additive2_spanner, fault_tolerant_spanner, greedy_spanner, verify_spanner, Spanner,
    SpannerError,
};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("unknown suite {0:?}; expected one of {SUITES:?}")]
    UnknownSuite(String),
    #[error("no sizes given")]
    NoSizes,
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Spanner(#[from] SpannerError),
    #[error(transparent)]
    Resilient(#[from] ResilientError),
}

pub const SUITES: [&str; 4] = ["resilient-size", "correctness", "girth", "fragility-oracle"];

/// How to build the spanner that gets augmented.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseSpec {
    Greedy(u32),
    Additive2,
    FaultTolerant(u32, usize),
}

impl BaseSpec {
    pub fn build(self, g: &Graph) -> Result<Spanner, SpannerError> {
        match self {
            BaseSpec::Greedy(t) => greedy_spanner(g, t),
            BaseSpec::Additive2 => additive2_spanner(g),
            BaseSpec::FaultTolerant(t, f) => fault_tolerant_spanner(g, t, f),
        }
    }

    /// `alpha + beta` of the construction.
    pub fn distortion_sum(self) -> f64 {
        match self {
            BaseSpec::Greedy(t) | BaseSpec::FaultTolerant(t, _) => f64::from(t),
            BaseSpec::Additive2 => 3.0,
        }
    }
}

impl fmt::Display for BaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseSpec::Greedy(t) => write!(f, "greedy:{t}"),
            BaseSpec::Additive2 => write!(f, "additive2"),
            BaseSpec::FaultTolerant(t, k) => write!(f, "ft:{t}:{k}"),
        }
    }
}

impl FromStr for BaseSpec {
    type Err = String;

    /// Accepts `greedy:T`, `additive2`, `ft:T` and `ft:T:F`.
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| {
            p.parse::<u32>()
                .map_err(|_| format!("invalid number {p:?} in base spec {s:?}"))
        };
        match parts.as_slice() {
            ["greedy", t] => Ok(BaseSpec::Greedy(num(t)?)),
            ["additive2"] => Ok(BaseSpec::Additive2),
            ["ft", t] => Ok(BaseSpec::FaultTolerant(num(t)?, 1)),
            ["ft", t, f] => Ok(BaseSpec::FaultTolerant(num(t)?, num(f)? as usize)),
            _ => Err(format!(
                "unknown base spec {s:?}; expected greedy:T, additive2, ft:T or ft:T:F"
            )),
        }
    }
}

/// Runs `suite` for every size and seeds `0..seeds`.
pub fn run_suite(suite: &str, sizes: &[usize], seeds: u64) -> Result<Report, ExperimentError> {
    if !SUITES.contains(&suite) {
        return Err(ExperimentError::UnknownSuite(suite.to_owned()));
    }
    if sizes.is_empty() {
        return Err(ExperimentError::NoSizes);
    }
    let mut report = Report::new("experiment");
    report.input = Some(suite.to_owned());
    let start = Instant::now();
    for &n in sizes {
        for seed in 0..seeds {
            match suite {
                "resilient-size" => report.runs.push(size_run(n, seed)?),
                "correctness" => report.runs.extend(correctness_runs(n, seed)?),
                "girth" => report.runs.extend(girth_runs(n, seed)?),
                _ => report.runs.push(oracle_run(n, seed)?),
            }
        }
    }
    report.record_timing("total", start.elapsed());
    let passed = report.runs.iter().all(|r| r.passed);
    report.verdicts.push(Verdict::bare(suite, passed));
    if suite == "resilient-size" {
        let worst = report
            .runs
            .iter()
            .filter_map(|r| r.size_constant)
            .fold(0.0, f64::max);
        report
            .verdicts
            .push(Verdict::new("max_size_constant", true, &worst));
    }
    Ok(report)
}

fn edge_budget(n: usize, per_vertex: usize) -> usize {
    (per_vertex * n)
        .min(n * n.saturating_sub(1) / 2)
        .max(n.saturating_sub(1))
}

fn record(suite: &str, g: &Graph, seed: u64) -> RunRecord {
    RunRecord {
        suite: suite.to_owned(),
        n: g.n(),
        m: g.m(),
        seed,
        ..RunRecord::default()
    }
}

/// Average degree about 8, greedy 3-spanner made 3-resilient.
fn size_run(n: usize, seed: u64) -> Result<RunRecord, ExperimentError> {
    let g = random_connected(n, edge_budget(n, 4), seed, 1)?;
    let base = BaseSpec::Greedy(3);
    let out = make_resilient(&g, &base.build(&g)?, 3)?;
    let r = &out.resilient.subgraph;
    let contains_base = out.base.subgraph.is_subgraph_of(r);
    let resilient = verify_resilient(&g, r, 3)?.holds;
    let stretch = verify_spanner(&g, r, 3.0, 0.0)?.holds;
    Ok(RunRecord {
        base: Some(base.to_string()),
        sigma: Some(3),
        spanner_edges: Some(out.base.size()),
        resilient_edges: Some(r.m()),
        size_constant: Some(r.m() as f64 / (n as f64).powf(1.5)),
        cycle_union: Some(CycleUnionSummary::new(&out.cycle_stats(), n)),
        passed: contains_base && resilient && stretch,
        ..record("resilient-size", &g, seed)
    })
}

/// Every base with every `sigma` in 3..=5 that is at least its distortion.
fn correctness_runs(n: usize, seed: u64) -> Result<Vec<RunRecord>, ExperimentError> {
    let g = random_connected(n, edge_budget(n, 3), seed, 1)?;
    let bases = [
        BaseSpec::Greedy(3),
        BaseSpec::Greedy(5),
        BaseSpec::Additive2,
        BaseSpec::FaultTolerant(3, 1),
    ];
    let mut runs = Vec::new();
    for base in bases {
        let s = base.build(&g)?;
        for sigma in 3..=5u32 {
            if f64::from(sigma) < base.distortion_sum() {
                continue;
            }
            let out = make_resilient(&g, &s, sigma)?;
            let r = &out.resilient.subgraph;
            let stats = out.cycle_stats();
            let resilient = verify_resilient(&g, r, sigma)?.holds;
            let stretch = verify_spanner(&g, r, s.alpha, s.beta)?.holds;
            runs.push(RunRecord {
                base: Some(base.to_string()),
                sigma: Some(sigma),
                spanner_edges: Some(s.size()),
                resilient_edges: Some(r.m()),
                passed: resilient && stretch && stats.new_edges <= 2 * n,
                cycle_union: Some(CycleUnionSummary::new(&stats, n)),
                ..record("correctness", &g, seed)
            });
        }
    }
    Ok(runs)
}

fn girth_runs(n: usize, seed: u64) -> Result<Vec<RunRecord>, ExperimentError> {
    let g = random_connected(n, edge_budget(n, 2), seed, 1)?;
    let fm = all_fragilities(&g);
    Ok((2..=6u32)
        .map(|sigma| {
            let bound = girth_bound(&g, sigma, &fm);
            RunRecord {
                sigma: Some(sigma),
                high_fragility_edges: Some(bound.high_fragility_edges),
                passed: bound.holds,
                ..record("girth", &g, seed)
            }
        })
        .collect())
}

fn oracle_run(n: usize, seed: u64) -> Result<RunRecord, ExperimentError> {
    let g = random_connected(n, edge_budget(n, 2), seed, 8)?;
    let fm = all_fragilities(&g);
    let mismatches = fm
        .iter()
        .filter(|&(e, f)| fragility_oracle(&g, e).ok() != Some(f))
        .count();
    Ok(RunRecord {
        mismatches: Some(mismatches),
        passed: mismatches == 0,
        ..record("fragility-oracle", &g, seed)
    })
}
