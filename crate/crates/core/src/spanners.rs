//! Classical spanner constructions and exhaustive distortion checks.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fragility::{all_fragilities, fragility_of};
use crate::graph::{cmp_weight, exceeds, Distance, Edge, EdgeId, Graph, VertexId};
use crate::parallel::map_indices;
use crate::paths::raw_distances;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpannerError {
    #[error("stretch must be at least 1, got {0}")]
    InvalidStretch(u32),
    #[error("fault tolerance needs at least one failure, got {0}")]
    InvalidFailures(usize),
    #[error("additive spanners are only defined on unit-weight graphs")]
    WeightedInput,
    #[error("candidate spanner is not a subgraph of the host graph")]
    NotSubgraph,
}

/// A subgraph together with the distortion `(alpha, beta)` it claims:
/// `d_S(x, y) <= alpha * d_G(x, y) + beta` for every pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Spanner {
    pub subgraph: Graph,
    pub alpha: f64,
    pub beta: f64,
}

impl Spanner {
    pub fn new(subgraph: Graph, alpha: f64, beta: f64) -> Self {
        Spanner {
            subgraph,
            alpha,
            beta,
        }
    }

    /// The spanner that keeps every edge.
    pub fn identity(g: &Graph) -> Self {
        Spanner::new(g.clone(), 1.0, 0.0)
    }

    pub fn size(&self) -> usize {
        self.subgraph.m()
    }

    /// `alpha + beta`, the smallest resilience threshold the spanner supports.
    pub fn distortion_sum(&self) -> f64 {
        self.alpha + self.beta
    }
}

/// Growing adjacency used while a spanner is under construction.
struct PartialSpanner {
    adjacency: Vec<Vec<(VertexId, f64)>>,
    unit: bool,
}

impl PartialSpanner {
    fn new(n: usize, unit: bool) -> Self {
        PartialSpanner {
            adjacency: vec![Vec::new(); n],
            unit,
        }
    }

    fn add(&mut self, e: Edge, w: f64) {
        self.adjacency[e.u].push((e.v, w));
        self.adjacency[e.v].push((e.u, w));
    }

    /// Whether `dst` is within distance `limit` of `src`.
    fn within(&self, src: VertexId, dst: VertexId, limit: f64) -> bool {
        let n = self.adjacency.len();
        let mut dist = vec![f64::INFINITY; n];
        dist[src] = 0.0;
        if self.unit {
            let mut queue = VecDeque::from([src]);
            while let Some(x) = queue.pop_front() {
                let next = dist[x] + 1.0;
                if exceeds(next, limit) {
                    break;
                }
                for &(y, _) in &self.adjacency[x] {
                    if dist[y].is_infinite() {
                        if y == dst {
                            return true;
                        }
                        dist[y] = next;
                        queue.push_back(y);
                    }
                }
            }
            false
        } else {
            let mut heap = BinaryHeap::new();
            heap.push(std::cmp::Reverse((OrdWeight(0.0), src)));
            let mut done = vec![false; n];
            while let Some(std::cmp::Reverse((OrdWeight(d), x))) = heap.pop() {
                if exceeds(d, limit) {
                    return false;
                }
                if x == dst {
                    return true;
                }
                if std::mem::replace(&mut done[x], true) {
                    continue;
                }
                for &(y, w) in &self.adjacency[x] {
                    let candidate = d + w;
                    if !done[y] && candidate < dist[y] && !exceeds(candidate, limit) {
                        dist[y] = candidate;
                        heap.push(std::cmp::Reverse((OrdWeight(candidate), y)));
                    }
                }
            }
            false
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
struct OrdWeight(f64);

impl Eq for OrdWeight {}

impl PartialOrd for OrdWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Edge ids in nondecreasing weight order, ties by endpoint pair.
fn greedy_order(g: &Graph) -> Vec<EdgeId> {
    let mut order: Vec<EdgeId> = (0..g.m()).collect();
    order.sort_by(|&a, &b| {
        g.weight(a)
            .total_cmp(&g.weight(b))
            .then_with(|| g.edge(a).cmp(&g.edge(b)))
    });
    order
}

fn greedy_mask(g: &Graph, t: u32) -> Vec<bool> {
    let limit = f64::from(t);
    let mut kept = vec![false; g.m()];
    let mut partial = PartialSpanner::new(g.n(), g.is_unit_weight());
    for id in greedy_order(g) {
        let e = g.edge(id);
        let w = g.weight(id);
        if !partial.within(e.u, e.v, limit * w) {
            partial.add(e, w);
            kept[id] = true;
        }
    }
    kept
}

/// Greedy multiplicative `t`-spanner: scan edges by weight and keep an edge
/// only if the spanner built so far stretches it by more than `t`.
pub fn greedy_spanner(g: &Graph, t: u32) -> Result<Spanner, SpannerError> {
    if t == 0 {
        return Err(SpannerError::InvalidStretch(t));
    }
    let kept = greedy_mask(g, t);
    Ok(Spanner::new(
        g.filter_edges(|id| kept[id]),
        f64::from(t),
        0.0,
    ))
}

/// Additive 2-spanner by clustering.
///
/// Vertices of degree below `ceil(sqrt(n))` keep all their edges. The
/// remaining heavy vertices are covered greedily by centers adjacent to
/// them; every heavy vertex keeps the edge to its center and every center
/// contributes a full shortest-path tree.
pub fn additive2_spanner(g: &Graph) -> Result<Spanner, SpannerError> {
    if !g.is_unit_weight() {
        return Err(SpannerError::WeightedInput);
    }
    let n = g.n();
    let threshold = (n as f64).sqrt().ceil() as usize;
    let mut kept = vec![false; g.m()];
    let heavy: Vec<bool> = (0..n).map(|x| g.degree(x) >= threshold).collect();
    for x in (0..n).filter(|&x| !heavy[x]) {
        for &(_, id) in g.neighbors(x) {
            kept[id] = true;
        }
    }

    let mut uncovered = heavy.clone();
    let mut remaining = heavy.iter().filter(|&&h| h).count();
    let mut centers = Vec::new();
    while remaining > 0 {
        let (center, _) = (0..n)
            .map(|c| {
                let gain = g
                    .neighbors(c)
                    .iter()
                    .filter(|&&(y, _)| uncovered[y])
                    .count();
                (c, gain)
            })
            .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
            .expect("graph has vertices");
        for &(y, id) in g.neighbors(center) {
            if uncovered[y] {
                uncovered[y] = false;
                remaining -= 1;
                kept[id] = true;
            }
        }
        centers.push(center);
    }

    for center in centers {
        let dist = raw_distances(g, center, None, None);
        for x in 0..n {
            if x == center || !dist[x].is_finite() {
                continue;
            }
            let &(_, id) = g
                .neighbors(x)
                .iter()
                .find(|&&(p, _)| dist[p] + 1.0 == dist[x])
                .expect("reached vertex has a tree parent");
            kept[id] = true;
        }
    }
    Ok(Spanner::new(g.filter_edges(|id| kept[id]), 1.0, 2.0))
}

/// Edge-fault-tolerant `t`-spanner: the union of `f + 1` greedy spanners,
/// each built on the edges not taken by earlier layers.
pub fn fault_tolerant_spanner(g: &Graph, t: u32, f: usize) -> Result<Spanner, SpannerError> {
    if t == 0 {
        return Err(SpannerError::InvalidStretch(t));
    }
    if f == 0 {
        return Err(SpannerError::InvalidFailures(f));
    }
    let mut taken = vec![false; g.m()];
    for _ in 0..=f {
        let residual_ids: Vec<EdgeId> = (0..g.m()).filter(|&id| !taken[id]).collect();
        if residual_ids.is_empty() {
            break;
        }
        let residual = g.filter_edges(|id| !taken[id]);
        let layer = greedy_mask(&residual, t);
        for (rid, keep) in layer.into_iter().enumerate() {
            if keep {
                taken[residual_ids[rid]] = true;
            }
        }
    }
    Ok(Spanner::new(
        g.filter_edges(|id| taken[id]),
        f64::from(t),
        0.0,
    ))
}

/// A vertex pair with its distance in the host and in the subgraph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairWitness {
    pub x: VertexId,
    pub y: VertexId,
    pub host: Distance,
    pub sub: Distance,
}

/// Result of an all-pairs distortion check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistortionReport {
    pub holds: bool,
    pub pairs_checked: usize,
    pub violations: usize,
    /// Pair with the largest `d_S - (alpha d_G + beta)`; a violation when
    /// `holds` is false.
    pub worst: Option<PairWitness>,
    /// Largest `d_S / d_G` over connected pairs.
    pub max_stretch: f64,
}

struct PairScan {
    pairs: usize,
    violations: usize,
    worst: Option<(f64, PairWitness)>,
    max_stretch: f64,
}

impl PairScan {
    fn empty() -> Self {
        PairScan {
            pairs: 0,
            violations: 0,
            worst: None,
            max_stretch: 1.0,
        }
    }

    fn merge(&mut self, other: PairScan) {
        self.pairs += other.pairs;
        self.violations += other.violations;
        self.max_stretch = self.max_stretch.max(other.max_stretch);
        if let Some((excess, witness)) = other.worst {
            if self
                .worst
                .as_ref()
                .is_none_or(|(best, _)| cmp_weight(excess, *best) == Ordering::Greater)
            {
                self.worst = Some((excess, witness));
            }
        }
    }
}

fn scan_source(host: &Graph, sub: &Graph, x: VertexId, alpha: f64, beta: f64) -> PairScan {
    let dg = raw_distances(host, x, None, None);
    let ds = raw_distances(sub, x, None, None);
    let mut scan = PairScan::empty();
    for y in x + 1..host.n() {
        if !dg[y].is_finite() {
            continue;
        }
        scan.pairs += 1;
        let bound = alpha * dg[y] + beta;
        let excess = ds[y] - bound;
        if exceeds(ds[y], bound) {
            scan.violations += 1;
        }
        if ds[y].is_finite() {
            scan.max_stretch = scan.max_stretch.max(ds[y] / dg[y]);
        } else {
            scan.max_stretch = f64::INFINITY;
        }
        let better = scan
            .worst
            .as_ref()
            .is_none_or(|(best, _)| cmp_weight(excess, *best) == Ordering::Greater);
        if better {
            scan.worst = Some((
                excess,
                PairWitness {
                    x,
                    y,
                    host: Distance::from_raw(dg[y]),
                    sub: Distance::from_raw(ds[y]),
                },
            ));
        }
    }
    scan
}

fn scan_all_pairs(host: &Graph, sub: &Graph, alpha: f64, beta: f64) -> PairScan {
    let mut total = PairScan::empty();
    for scan in map_indices(host.n(), |x| scan_source(host, sub, x, alpha, beta)) {
        total.merge(scan);
    }
    total
}

/// Exhaustively checks `d_S(x, y) <= alpha d_G(x, y) + beta`.
pub fn verify_spanner(
    g: &Graph,
    s: &Graph,
    alpha: f64,
    beta: f64,
) -> Result<DistortionReport, SpannerError> {
    if !s.is_subgraph_of(g) {
        return Err(SpannerError::NotSubgraph);
    }
    let scan = scan_all_pairs(g, s, alpha, beta);
    Ok(DistortionReport {
        holds: scan.violations == 0,
        pairs_checked: scan.pairs,
        violations: scan.violations,
        worst: scan.worst.map(|(_, w)| w),
        max_stretch: scan.max_stretch,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaultWitness {
    pub failed: Vec<Edge>,
    pub pair: PairWitness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaultToleranceReport {
    pub holds: bool,
    pub failure_sets_checked: usize,
    pub violations: usize,
    pub worst: Option<FaultWitness>,
}

/// All sets of at most `f` edge ids out of `m`, smallest first.
fn failure_sets(m: usize, f: usize) -> Vec<Vec<EdgeId>> {
    let mut sets = vec![Vec::new()];
    let mut frontier: Vec<Vec<EdgeId>> = vec![Vec::new()];
    for _ in 0..f {
        let mut next = Vec::new();
        for set in &frontier {
            let start = set.last().map_or(0, |&l| l + 1);
            for id in start..m {
                let mut grown = set.clone();
                grown.push(id);
                next.push(grown);
            }
        }
        sets.extend(next.iter().cloned());
        frontier = next;
    }
    sets
}

/// Exhaustively checks `d_{S-F}(x, y) <= t d_{G-F}(x, y)` for every set `F`
/// of at most `f` edges of `g`. Pairs disconnected in `G - F` are exempt.
pub fn verify_fault_tolerance(
    g: &Graph,
    s: &Graph,
    t: f64,
    f: usize,
) -> Result<FaultToleranceReport, SpannerError> {
    if !s.is_subgraph_of(g) {
        return Err(SpannerError::NotSubgraph);
    }
    let sets = failure_sets(g.m(), f);
    let scans = map_indices(sets.len(), |i| {
        let failed = &sets[i];
        let host = g.filter_edges(|id| !failed.contains(&id));
        let failed_edges: Vec<Edge> = failed.iter().map(|&id| g.edge(id)).collect();
        let sub = s.filter_edges(|sid| !failed_edges.contains(&s.edge(sid)));
        let mut scan = PairScan::empty();
        for x in 0..g.n() {
            scan.merge(scan_source(&host, &sub, x, t, 0.0));
        }
        scan
    });

    let mut violations = 0;
    let mut worst: Option<(f64, FaultWitness)> = None;
    for (i, scan) in scans.into_iter().enumerate() {
        violations += scan.violations;
        if let Some((excess, pair)) = scan.worst {
            if worst
                .as_ref()
                .is_none_or(|(best, _)| cmp_weight(excess, *best) == Ordering::Greater)
            {
                let failed = sets[i].iter().map(|&id| g.edge(id)).collect();
                worst = Some((excess, FaultWitness { failed, pair }));
            }
        }
    }
    Ok(FaultToleranceReport {
        holds: violations == 0,
        failure_sets_checked: sets.len(),
        violations,
        worst: worst.map(|(_, w)| w),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FragilityBoundReport {
    /// Largest `frag_S(e) / frag_G(e)` over spanner edges.
    pub max_ratio: f64,
    pub worst_edge: Option<Edge>,
    pub within_bound: bool,
}

/// Compares each spanner edge's fragility in `s` with its fragility in `g`;
/// a 1-edge fault-tolerant `t`-spanner never exceeds ratio `t`.
pub fn fault_tolerant_fragility_bound(
    g: &Graph,
    s: &Graph,
    t: f64,
) -> Result<FragilityBoundReport, SpannerError> {
    if !s.is_subgraph_of(g) {
        return Err(SpannerError::NotSubgraph);
    }
    let in_sub = all_fragilities(s);
    let mut max_ratio = 1.0;
    let mut worst_edge = None;
    for (e, frag_sub) in in_sub.iter() {
        let gid = g.edge_id(e).map_err(|_| SpannerError::NotSubgraph)?;
        let ratio = frag_sub.ratio_to(fragility_of(g, gid));
        if worst_edge.is_none() || cmp_weight(ratio, max_ratio) == Ordering::Greater {
            max_ratio = ratio;
            worst_edge = Some(e);
        }
    }
    Ok(FragilityBoundReport {
        max_ratio,
        worst_edge,
        within_bound: !exceeds(max_ratio, t) && !max_ratio.is_infinite(),
    })
}
