//! Resilient spanners.
//!
//! A subgraph `R` of `G` is `sigma`-resilient when every edge `e` of `R`
//! satisfies `frag_R(e) <= max(sigma, frag_G(e))`: losing a single link
//! never stretches its endpoints' distance by much more than it would in the
//! full network.
//!
//! [`make_resilient`] starts from any `(alpha, beta)`-spanner with
//! `alpha + beta <= sigma` and, for every spanner edge whose fragility in the
//! spanner exceeds `sigma`, adds a shortest replacement path taken from `G`.
//! Edges that enter `R` this way are already stretched by at most
//! `alpha + beta`, and each processed edge ends with exactly its fragility in
//! `G`, which together give the resilience bound.
//!
//! Replacement paths are chosen by [`backup_cycle`]: among all shortest
//! replacement paths it takes one with the fewest edges outside the set
//! already in use, so consecutive short cycles share as much as possible.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity::bridge_mask;
use crate::fragility::{all_fragilities, fragility_of, Fragility, FragilityMap};
use crate::graph::{cmp_weight, same_weight, Edge, EdgeId, Graph, GraphError, Path, VertexId};
use crate::parallel::map_indices;
use crate::spanners::Spanner;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResilientError {
    #[error("sigma must be at least 2, got {0}")]
    SigmaTooSmall(u32),
    #[error("sigma = {sigma} is below the base spanner's alpha + beta = {distortion}")]
    SigmaBelowDistortion { sigma: u32, distortion: f64 },
    #[error("candidate spanner is not a subgraph of the host graph")]
    NotSubgraph,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A set of edges of one particular graph, indexed by its edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    members: Vec<bool>,
    count: usize,
}

impl EdgeSet {
    pub fn empty(g: &Graph) -> Self {
        EdgeSet {
            members: vec![false; g.m()],
            count: 0,
        }
    }

    pub fn from_edges<I>(g: &Graph, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut set = EdgeSet::empty(g);
        for e in edges {
            set.insert(g.edge_id(e)?);
        }
        Ok(set)
    }

    /// Returns `true` if `id` was not present before.
    pub fn insert(&mut self, id: EdgeId) -> bool {
        let fresh = !std::mem::replace(&mut self.members[id], true);
        self.count += usize::from(fresh);
        fresh
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.members[id]
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(id, &m)| m.then_some(id))
    }
}

/// A short cycle for `edge`: the edge plus a shortest path between its
/// endpoints that avoids it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackupCycle {
    pub edge: Edge,
    /// Replacement path from `edge.u` to `edge.v`.
    pub path: Path,
    /// Path edges that were not in the used set when the cycle was chosen.
    pub new_edges: usize,
}

impl BackupCycle {
    /// Number of edges on the cycle.
    pub fn len(&self) -> usize {
        self.path.hops() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        std::iter::once(self.edge).chain(self.path.edges())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.path.vertices
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Label {
    dist: f64,
    fresh: u32,
}

impl Label {
    fn better_than(self, other: Label) -> bool {
        match cmp_weight(self.dist, other.dist) {
            Ordering::Less => true,
            Ordering::Equal => self.fresh < other.fresh,
            Ordering::Greater => false,
        }
    }

    fn matches(self, other: Label) -> bool {
        same_weight(self.dist, other.dist) && self.fresh == other.fresh
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    label: Label,
    vertex: VertexId,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .label
            .dist
            .total_cmp(&self.label.dist)
            .then_with(|| other.label.fresh.cmp(&self.label.fresh))
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reuse-aware short cycle for edge `e`.
///
/// Runs a Dijkstra visit from `e.u` in `G - e` ordered by path weight first
/// and by the number of edges outside `used` second, then walks back from
/// `e.v` through the smallest tight predecessor. Returns `None` iff `e` is a
/// bridge.
pub fn backup_cycle(g: &Graph, e: EdgeId, used: &EdgeSet) -> Option<BackupCycle> {
    let edge = g.edge(e);
    let (src, dst) = (edge.u, edge.v);
    let unset = Label {
        dist: f64::INFINITY,
        fresh: u32::MAX,
    };
    let mut labels = vec![unset; g.n()];
    labels[src] = Label {
        dist: 0.0,
        fresh: 0,
    };
    let mut heap = BinaryHeap::from([Entry {
        label: labels[src],
        vertex: src,
    }]);
    while let Some(Entry { label, vertex: x }) = heap.pop() {
        if label != labels[x] {
            continue;
        }
        for &(y, id) in g.neighbors(x) {
            if id == e {
                continue;
            }
            let candidate = Label {
                dist: label.dist + g.weight(id),
                fresh: label.fresh + u32::from(!used.contains(id)),
            };
            if candidate.better_than(labels[y]) {
                labels[y] = candidate;
                heap.push(Entry {
                    label: candidate,
                    vertex: y,
                });
            }
        }
    }
    if !labels[dst].dist.is_finite() {
        return None;
    }

    let mut vertices = vec![dst];
    let mut x = dst;
    while x != src {
        let (p, _) = g
            .neighbors(x)
            .iter()
            .copied()
            .find(|&(p, id)| {
                if id == e || labels[p].dist >= labels[x].dist || !labels[p].dist.is_finite() {
                    return false;
                }
                let through = Label {
                    dist: labels[p].dist + g.weight(id),
                    fresh: labels[p].fresh + u32::from(!used.contains(id)),
                };
                through.matches(labels[x])
            })
            .expect("finite label has a tight predecessor");
        vertices.push(p);
        x = p;
    }
    vertices.reverse();
    Some(BackupCycle {
        edge,
        path: Path {
            vertices,
            weight: labels[dst].dist,
        },
        new_edges: labels[dst].fresh as usize,
    })
}

/// A spanner augmented with backup paths.
#[derive(Debug, Clone, PartialEq)]
pub struct ResilientSpanner {
    pub base: Spanner,
    /// `base` plus every added edge; carries the base's distortion.
    pub resilient: Spanner,
    /// Edges of `G - S` that were added, in insertion order.
    pub added: Vec<Edge>,
    pub sigma: u32,
    /// One short cycle per processed edge, in selection order.
    pub cycles: Vec<BackupCycle>,
    /// Fragility of every base edge inside the base spanner.
    pub base_fragility: FragilityMap,
}

impl ResilientSpanner {
    pub fn cycle_stats(&self) -> CycleUnionStats {
        cycle_union_stats(&self.cycles)
    }
}

/// Adds reuse-aware backup paths to `s` until every edge is
/// `sigma`-resilient.
///
/// Processes the non-bridge edges of `s` whose fragility in `s` exceeds
/// `sigma`, most fragile first (ties by endpoint pair). The set of used edges
/// starts as the edges of `s` and grows with every added path.
pub fn make_resilient(
    g: &Graph,
    s: &Spanner,
    sigma: u32,
) -> Result<ResilientSpanner, ResilientError> {
    if sigma < 2 {
        return Err(ResilientError::SigmaTooSmall(sigma));
    }
    if cmp_weight(f64::from(sigma), s.distortion_sum()) == Ordering::Less {
        return Err(ResilientError::SigmaBelowDistortion {
            sigma,
            distortion: s.distortion_sum(),
        });
    }
    if !s.subgraph.is_subgraph_of(g) {
        return Err(ResilientError::NotSubgraph);
    }

    let base_fragility = all_fragilities(&s.subgraph);
    let is_bridge = bridge_mask(g);
    let mut pending: Vec<(Fragility, Edge, EdgeId)> = Vec::new();
    for (e, frag) in base_fragility.iter() {
        let gid = g.edge_id(e)?;
        if frag.exceeds(f64::from(sigma)) && !is_bridge[gid] {
            pending.push((frag, e, gid));
        }
    }
    pending.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));

    let mut used = EdgeSet::from_edges(g, s.subgraph.edges().iter().copied())?;
    let mut added = Vec::new();
    let mut cycles = Vec::with_capacity(pending.len());
    for (_, _, gid) in pending {
        let cycle = backup_cycle(g, gid, &used).expect("non-bridge edges lie on a cycle");
        for pe in cycle.path.edges() {
            if used.insert(g.edge_id(pe)?) {
                added.push(pe);
            }
        }
        cycles.push(cycle);
    }

    let resilient = g.filter_edges(|id| used.contains(id));
    Ok(ResilientSpanner {
        base: s.clone(),
        resilient: Spanner::new(resilient, s.alpha, s.beta),
        added,
        sigma,
        cycles,
        base_fragility,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResilienceViolation {
    pub edge: Edge,
    pub in_subgraph: Fragility,
    pub in_host: Fragility,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResilienceReport {
    pub holds: bool,
    pub edges_checked: usize,
    pub violations: Vec<ResilienceViolation>,
}

/// Checks `frag_R(e) <= max(sigma, frag_G(e))` for every edge of `r`.
pub fn verify_resilient(
    g: &Graph,
    r: &Graph,
    sigma: u32,
) -> Result<ResilienceReport, ResilientError> {
    if !r.is_subgraph_of(g) {
        return Err(ResilientError::NotSubgraph);
    }
    let in_sub = all_fragilities(r);
    let floor = Fragility::ratio(f64::from(sigma), 1.0);
    let checked = map_indices(r.m(), |rid| {
        let e = r.edge(rid);
        let gid = g.find_edge(e.u, e.v).expect("subgraph edge exists in host");
        let in_host = fragility_of(g, gid);
        let in_subgraph = in_sub.get(rid);
        (in_subgraph > floor.max(in_host)).then_some(ResilienceViolation {
            edge: e,
            in_subgraph,
            in_host,
        })
    });
    let violations: Vec<_> = checked.into_iter().flatten().collect();
    Ok(ResilienceReport {
        holds: violations.is_empty(),
        edges_checked: r.m(),
        violations,
    })
}

/// Spanner edges that need a backup, split by their fragility in the host.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FragilityPartition {
    /// `sigma <= frag <= 5`.
    pub low: Vec<Edge>,
    /// `max(sigma, 6) <= frag < log2 n`.
    pub mid: Vec<Edge>,
    /// `frag >= log2 n`.
    pub high: Vec<Edge>,
}

impl FragilityPartition {
    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.low.len(), self.mid.len(), self.high.len())
    }
}

/// Splits the edges of `s` with host fragility at least `sigma` into low,
/// medium and high classes. Bridges of the host never need a backup and are
/// left out. When `log2 n <= 5` the high class takes precedence.
pub fn fragility_classes(
    g: &Graph,
    s: &Graph,
    sigma: u32,
    fm: &FragilityMap,
) -> FragilityPartition {
    debug_assert!(fm.matches(g));
    let log_n = (g.n().max(1) as f64).log2();
    let sigma = f64::from(sigma);
    let mut partition = FragilityPartition::default();
    for &e in s.edges() {
        let Some(frag) = fm.get_edge(e) else { continue };
        if frag.is_infinite() || !frag.at_least(sigma) {
            continue;
        }
        if frag.at_least(log_n) {
            partition.high.push(e);
        } else if frag.at_least(sigma.max(6.0)) {
            partition.mid.push(e);
        } else {
            partition.low.push(e);
        }
    }
    partition
}

/// Old/new/cross split of one cycle's edges.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleClasses {
    /// Edges already on an earlier cycle.
    pub old: usize,
    /// Edges with an endpoint on no earlier cycle.
    pub new: usize,
    /// Remaining edges: unseen, but both endpoints already covered.
    pub cross: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CycleUnionStats {
    pub cycles: usize,
    /// Distinct edges classified old by at least one cycle.
    pub old_edges: usize,
    pub new_edges: usize,
    pub cross_edges: usize,
    /// `new_edges + cross_edges`: every union edge counted at first sight.
    pub union_edges: usize,
    pub union_vertices: usize,
    pub per_cycle: Vec<CycleClasses>,
}

/// Classifies the edges of each cycle against all cycles listed before it.
pub fn cycle_union_stats(cycles: &[BackupCycle]) -> CycleUnionStats {
    let mut seen_edges: HashSet<Edge> = HashSet::new();
    let mut seen_vertices: HashSet<VertexId> = HashSet::new();
    let mut old_edges: HashSet<Edge> = HashSet::new();
    let mut stats = CycleUnionStats {
        cycles: cycles.len(),
        ..Default::default()
    };
    for cycle in cycles {
        let mut classes = CycleClasses::default();
        for e in cycle.edges() {
            if seen_edges.contains(&e) {
                classes.old += 1;
                old_edges.insert(e);
            } else if !seen_vertices.contains(&e.u) || !seen_vertices.contains(&e.v) {
                classes.new += 1;
            } else {
                classes.cross += 1;
            }
        }
        seen_edges.extend(cycle.edges());
        seen_vertices.extend(cycle.vertices().iter().copied());
        stats.new_edges += classes.new;
        stats.cross_edges += classes.cross;
        stats.per_cycle.push(classes);
    }
    stats.old_edges = old_edges.len();
    stats.union_edges = seen_edges.len();
    stats.union_vertices = seen_vertices.len();
    stats
}

/// `min(q sqrt(n) + n, n sqrt(q) + q)`: the asymptotic size of a union of
/// `q` reuse-aware short cycles, without its constant.
pub fn cycle_union_budget(n: usize, q: usize) -> f64 {
    let (n, q) = (n as f64, q as f64);
    (q * n.sqrt() + n).min(n * q.sqrt() + q)
}
