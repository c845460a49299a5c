//! Edge fragility: how much the distance between the endpoints of an edge
//! grows, relative to their original distance, once the edge is removed.
//!
//! The maximum relative increase over all vertex pairs is always attained by
//! the endpoints of the removed edge, so [`fragility_of`] needs a single
//! replacement-path query. [`fragility_oracle`] evaluates the all-pairs
//! definition directly and exists to check that shortcut.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{cmp_weight, Distance, Edge, EdgeId, Graph, GraphError};
use crate::parallel::map_indices;
use crate::paths::{distance_avoiding_edge, girth, raw_distances};

/// A ratio `detour / direct` of two path weights, or `Infinite` for bridges.
///
/// Comparison cross-multiplies, so integer-weighted fragilities compare
/// exactly (`4/2 == 2/1`).
#[derive(Debug, Clone, Copy)]
pub enum Fragility {
    Finite { detour: f64, direct: f64 },
    Infinite,
}

impl Fragility {
    pub const ONE: Fragility = Fragility::Finite {
        detour: 1.0,
        direct: 1.0,
    };

    pub fn ratio(detour: f64, direct: f64) -> Self {
        Fragility::Finite { detour, direct }
    }

    /// Fragility of an edge of weight `w` whose endpoints are `detour` apart
    /// once it is removed. The edge need not be a shortest path itself.
    pub fn of_edge(detour: Distance, w: f64) -> Self {
        match detour {
            Distance::Finite(d) => Fragility::ratio(d, d.min(w)),
            Distance::Unreachable => Fragility::Infinite,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Fragility::Finite { detour, direct } => detour / direct,
            Fragility::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Fragility::Infinite)
    }

    /// Strictly greater than `x`.
    pub fn exceeds(self, x: f64) -> bool {
        match self {
            Fragility::Finite { detour, direct } => {
                cmp_weight(detour, x * direct) == Ordering::Greater
            }
            Fragility::Infinite => true,
        }
    }

    /// Greater than or equal to `x`.
    pub fn at_least(self, x: f64) -> bool {
        match self {
            Fragility::Finite { detour, direct } => {
                cmp_weight(detour, x * direct) != Ordering::Less
            }
            Fragility::Infinite => true,
        }
    }

    /// `self / other`, with `Infinite / Infinite = 1`.
    pub fn ratio_to(self, other: Fragility) -> f64 {
        match (self, other) {
            (Fragility::Infinite, Fragility::Infinite) => 1.0,
            (Fragility::Infinite, _) => f64::INFINITY,
            (_, Fragility::Infinite) => 0.0,
            (
                Fragility::Finite {
                    detour: a,
                    direct: b,
                },
                Fragility::Finite {
                    detour: c,
                    direct: d,
                },
            ) => (a * d) / (b * c),
        }
    }

    pub fn max(self, other: Fragility) -> Fragility {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl PartialEq for Fragility {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Fragility {}

impl PartialOrd for Fragility {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fragility {
    fn cmp(&self, other: &Self) -> Ordering {
        match (*self, *other) {
            (Fragility::Infinite, Fragility::Infinite) => Ordering::Equal,
            (Fragility::Infinite, _) => Ordering::Greater,
            (_, Fragility::Infinite) => Ordering::Less,
            (
                Fragility::Finite {
                    detour: a,
                    direct: b,
                },
                Fragility::Finite {
                    detour: c,
                    direct: d,
                },
            ) => cmp_weight(a * d, c * b),
        }
    }
}

impl PartialEq<f64> for Fragility {
    fn eq(&self, other: &f64) -> bool {
        match *self {
            Fragility::Finite { detour, direct } => {
                cmp_weight(detour, other * direct) == Ordering::Equal
            }
            Fragility::Infinite => other.is_infinite(),
        }
    }
}

/// Serialized as its numeric value, or the string `"inf"`.
impl Serialize for Fragility {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Fragility::Finite { .. } => serializer.serialize_f64(self.value()),
            Fragility::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Fragility {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(f64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Number(v) => Ok(Fragility::ratio(v, 1.0)),
            Repr::Text(t) if t == "inf" => Ok(Fragility::Infinite),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("invalid fragility {t:?}"))),
        }
    }
}

impl fmt::Display for Fragility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fragility::Finite { .. } => write!(f, "{}", self.value()),
            Fragility::Infinite => f.write_str("inf"),
        }
    }
}

/// Fragility of edge `id`.
pub fn fragility_of(g: &Graph, id: EdgeId) -> Fragility {
    let e = g.edge(id);
    let (detour, _) = distance_avoiding_edge(g, e.u, e.v, id);
    Fragility::of_edge(detour, g.weight(id))
}

/// Fragility of `e`, rejecting edges that are not in `g`.
pub fn edge_fragility(g: &Graph, e: Edge) -> Result<Fragility, GraphError> {
    Ok(fragility_of(g, g.edge_id(e)?))
}

/// Literal definition: the largest `d_{G-e}(x, y) / d_G(x, y)` over all
/// pairs, using all-pairs distances of `g` and of a rebuilt copy without `e`.
pub fn fragility_oracle(g: &Graph, e: Edge) -> Result<Fragility, GraphError> {
    let id = g.edge_id(e)?;
    let reduced = g.without_edge(id);
    let mut worst = Fragility::ONE;
    for x in 0..g.n() {
        let before = raw_distances(g, x, None, None);
        let after = raw_distances(&reduced, x, None, None);
        for y in 0..g.n() {
            if y == x || !before[y].is_finite() {
                continue;
            }
            if !after[y].is_finite() {
                return Ok(Fragility::Infinite);
            }
            worst = worst.max(Fragility::ratio(after[y], before[y]));
        }
    }
    Ok(worst)
}

/// Fragility of every edge of a graph, indexed by edge id.
#[derive(Debug, Clone, PartialEq)]
pub struct FragilityMap {
    edges: Vec<Edge>,
    values: Vec<Fragility>,
}

impl FragilityMap {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, id: EdgeId) -> Fragility {
        self.values[id]
    }

    pub fn get_edge(&self, e: Edge) -> Option<Fragility> {
        self.edges.binary_search(&e).ok().map(|i| self.values[i])
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn values(&self) -> &[Fragility] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, Fragility)> + '_ {
        self.edges.iter().copied().zip(self.values.iter().copied())
    }

    /// Whether this map was computed on a graph with exactly `g`'s edges.
    pub fn matches(&self, g: &Graph) -> bool {
        self.edges == g.edges()
    }

    /// Distinct fragility values in increasing order with their multiplicity.
    pub fn histogram(&self) -> Vec<(Fragility, usize)> {
        let mut sorted = self.values.clone();
        sorted.sort();
        let mut bins: Vec<(Fragility, usize)> = Vec::new();
        for f in sorted {
            match bins.last_mut() {
                Some((last, count)) if *last == f => *count += 1,
                _ => bins.push((f, 1)),
            }
        }
        bins
    }
}

/// Fragility of every edge, one replacement-path query per edge.
pub fn all_fragilities(g: &Graph) -> FragilityMap {
    FragilityMap {
        edges: g.edges().to_vec(),
        values: map_indices(g.m(), |id| fragility_of(g, id)),
    }
}

/// Edges whose fragility is strictly greater than `sigma`, on the same
/// vertex set.
pub fn high_fragility_subgraph(g: &Graph, sigma: u32, fm: &FragilityMap) -> Graph {
    debug_assert!(fm.matches(g));
    g.filter_edges(|id| fm.get(id).exceeds(f64::from(sigma)))
}

/// Outcome of the girth test on the high-fragility subgraph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GirthBound {
    pub sigma: u32,
    pub high_fragility_edges: usize,
    /// Girth of the high-fragility subgraph counted in edges.
    pub girth: Distance,
    pub holds: bool,
}

/// Girth (in edges) of the high-fragility subgraph versus `sigma + 1`.
pub fn girth_bound(g: &Graph, sigma: u32, fm: &FragilityMap) -> GirthBound {
    let high = high_fragility_subgraph(g, sigma, fm);
    let hop_girth = girth(&high.to_unit_weight());
    let holds = match hop_girth {
        Distance::Finite(len) => len > f64::from(sigma) + 1.0,
        Distance::Unreachable => true,
    };
    GirthBound {
        sigma,
        high_fragility_edges: high.m(),
        girth: hop_girth,
        holds,
    }
}

/// True iff every cycle made only of edges with fragility above `sigma` has
/// more than `sigma + 1` edges.
pub fn check_girth_bound(g: &Graph, sigma: u32) -> bool {
    girth_bound(g, sigma, &all_fragilities(g)).holds
}

/// `n^(1 + 1/floor((sigma + 1) / 2))`: the extremal edge count of a graph
/// with girth above `sigma + 1`, without its constant.
pub fn high_fragility_budget(n: usize, sigma: u32) -> f64 {
    let k = f64::from(sigma.div_ceil(2)).max(1.0);
    (n as f64).powf(1.0 + 1.0 / k)
}
