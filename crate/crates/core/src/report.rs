//! JSON run reports.
//!
//! Field order is fixed by the struct definitions, so two runs with the same
//! inputs serialize identically once `timings_ms` is cleared.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::fragility::{Fragility, FragilityMap};
use crate::graph::Edge;
use crate::resilient::{CycleUnionStats, FragilityPartition, ResilienceViolation};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub operation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub sizes: Sizes,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub added_edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resilient: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fragility_histogram: Vec<HistogramBin>,
    /// Host-graph histogram when `fragility_histogram` describes a subgraph.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub host_fragility_histogram: Vec<HistogramBin>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fragilities: Vec<EdgeFragility>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionSizes>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle_union: Option<CycleUnionSummary>,
    #[serde(default)]
    pub verdicts: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<ResilienceViolation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub runs: Vec<RunRecord>,
    #[serde(default)]
    pub timings_ms: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stretch: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failures: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sizes {
    pub vertices: usize,
    pub edges: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spanner_edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resilient_edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub added_edges: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub fragility: Fragility,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeFragility {
    pub edge: Edge,
    pub fragility: Fragility,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSizes {
    pub low: usize,
    pub mid: usize,
    pub high: usize,
}

impl From<&FragilityPartition> for PartitionSizes {
    fn from(p: &FragilityPartition) -> Self {
        let (low, mid, high) = p.sizes();
        PartitionSizes { low, mid, high }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleUnionSummary {
    pub cycles: usize,
    pub old_edges: usize,
    pub new_edges: usize,
    pub cross_edges: usize,
    pub union_edges: usize,
    pub union_vertices: usize,
    /// `min(q sqrt(n) + n, n sqrt(q) + q)` for `q` cycles.
    pub budget: f64,
}

impl CycleUnionSummary {
    pub fn new(stats: &CycleUnionStats, n: usize) -> Self {
        CycleUnionSummary {
            cycles: stats.cycles,
            old_edges: stats.old_edges,
            new_edges: stats.new_edges,
            cross_edges: stats.cross_edges,
            union_edges: stats.union_edges,
            union_vertices: stats.union_vertices,
            budget: crate::resilient::cycle_union_budget(n, stats.cycles),
        }
    }
}

/// One checked property; `witness` holds the verifier's own report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl Verdict {
    pub fn new<W: Serialize>(check: &str, passed: bool, witness: &W) -> Self {
        Verdict {
            check: check.to_owned(),
            passed,
            witness: Some(serde_json::to_value(witness).expect("verifier reports serialize")),
        }
    }

    pub fn bare(check: &str, passed: bool) -> Self {
        Verdict {
            check: check.to_owned(),
            passed,
            witness: None,
        }
    }
}

/// One experiment run; fields a suite does not measure stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub suite: String,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spanner_edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resilient_edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size_constant: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle_union: Option<CycleUnionSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub high_fragility_edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mismatches: Option<usize>,
    pub passed: bool,
}

impl Report {
    pub fn new(operation: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            operation: operation.to_owned(),
            input: None,
            params: Params::default(),
            sizes: Sizes::default(),
            added_edges: None,
            resilient: None,
            fragility_histogram: Vec::new(),
            host_fragility_histogram: Vec::new(),
            fragilities: Vec::new(),
            partition: None,
            cycle_union: None,
            verdicts: Vec::new(),
            violations: Vec::new(),
            runs: Vec::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn set_fragilities(&mut self, fm: &FragilityMap) {
        self.fragility_histogram = histogram(fm);
        self.fragilities = fm
            .iter()
            .map(|(edge, fragility)| EdgeFragility { edge, fragility })
            .collect();
    }

    pub fn record_timing(&mut self, stage: &str, elapsed: std::time::Duration) {
        self.timings_ms
            .insert(stage.to_owned(), elapsed.as_secs_f64() * 1e3);
    }

    pub fn without_timings(&self) -> Report {
        Report {
            timings_ms: BTreeMap::new(),
            ..self.clone()
        }
    }
}

pub fn histogram(fm: &FragilityMap) -> Vec<HistogramBin> {
    fm.histogram()
        .into_iter()
        .map(|(fragility, count)| HistogramBin { fragility, count })
        .collect()
}

pub fn emit_report(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    text
}

pub fn parse_report(text: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(text)
}
