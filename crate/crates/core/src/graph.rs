//! Immutable undirected graph with positive edge weights.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Relative tolerance for comparing non-integral path weights.
///
/// Integral weights sum exactly in `f64`, so the tolerance never merges two
/// distinct integer distances below 10^9.
pub const WEIGHT_TOLERANCE: f64 = 1e-9;

pub(crate) fn same_weight(a: f64, b: f64) -> bool {
    if a == b {
        return true;
    }
    if !a.is_finite() || !b.is_finite() {
        return false;
    }
    (a - b).abs() <= WEIGHT_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// `a > b` beyond the comparison tolerance.
pub(crate) fn exceeds(a: f64, b: f64) -> bool {
    a > b && !same_weight(a, b)
}

pub(crate) fn cmp_weight(a: f64, b: f64) -> Ordering {
    if same_weight(a, b) {
        Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("edge #{index} ({u}, {v}): vertex out of range for n = {n}")]
    VertexOutOfRange {
        index: usize,
        u: VertexId,
        v: VertexId,
        n: usize,
    },
    #[error("edge #{index}: self-loop at vertex {vertex}")]
    SelfLoop { index: usize, vertex: VertexId },
    #[error("edge #{index}: duplicate edge ({u}, {v})")]
    DuplicateEdge {
        index: usize,
        u: VertexId,
        v: VertexId,
    },
    #[error("edge #{index} ({u}, {v}): weight {weight} is not a positive finite number")]
    InvalidWeight {
        index: usize,
        u: VertexId,
        v: VertexId,
        weight: f64,
    },
    #[error("edge ({0}, {1}) is not in the graph")]
    EdgeNotFound(VertexId, VertexId),
}

/// An unordered vertex pair, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

impl From<(VertexId, VertexId)> for Edge {
    fn from((a, b): (VertexId, VertexId)) -> Self {
        Edge::new(a, b)
    }
}

/// A shortest-path distance. `Unreachable` orders after every finite value.
#[derive(Debug, Clone, Copy)]
pub enum Distance {
    Finite(f64),
    Unreachable,
}

impl Distance {
    pub(crate) fn from_raw(d: f64) -> Self {
        if d.is_finite() {
            Distance::Finite(d)
        } else {
            Distance::Unreachable
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn is_unreachable(self) -> bool {
        matches!(self, Distance::Unreachable)
    }
}

impl PartialEq for Distance {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Distance {}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Distance {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => a.total_cmp(b),
            (Distance::Finite(_), Distance::Unreachable) => Ordering::Less,
            (Distance::Unreachable, Distance::Finite(_)) => Ordering::Greater,
            (Distance::Unreachable, Distance::Unreachable) => Ordering::Equal,
        }
    }
}

impl PartialEq<f64> for Distance {
    fn eq(&self, other: &f64) -> bool {
        matches!(self, Distance::Finite(d) if d == other)
    }
}

/// Serialized as a number, or the string `"unreachable"`.
impl Serialize for Distance {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => serializer.serialize_f64(*d),
            Distance::Unreachable => serializer.serialize_str("unreachable"),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(f64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Number(d) => Ok(Distance::Finite(d)),
            Repr::Text(t) if t == "unreachable" => Ok(Distance::Unreachable),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("invalid distance {t:?}"))),
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => f.write_str("unreachable"),
        }
    }
}

/// A simple path, stored as its vertex sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Path {
    pub vertices: Vec<VertexId>,
    pub weight: f64,
}

impl Path {
    pub fn source(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn target(&self) -> VertexId {
        *self.vertices.last().expect("paths are never empty")
    }

    /// Number of edges.
    pub fn hops(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| Edge::new(w[0], w[1]))
    }

    /// Checks that the path is simple, walks edges of `g`, and has the stored weight.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut seen = vec![false; g.n()];
        for &x in &self.vertices {
            if x >= g.n() || std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        let mut total = 0.0;
        for e in self.edges() {
            match g.find_edge(e.u, e.v) {
                Some(id) => total += g.weight(id),
                None => return false,
            }
        }
        same_weight(total, self.weight)
    }
}

/// Undirected simple graph on vertices `0..n`.
///
/// Edges are kept sorted by `(u, v)` with `u < v`; an [`EdgeId`] is the index
/// into that order. Adjacency lists are sorted by neighbour id.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    weights: Vec<f64>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    unit: bool,
    integral: bool,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.weights == other.weights
    }
}

impl Graph {
    /// Validates and builds a graph from `(u, v, w)` triples.
    pub fn new(n: usize, edge_list: &[(VertexId, VertexId, f64)]) -> Result<Self, GraphError> {
        let mut items = Vec::with_capacity(edge_list.len());
        for (index, &(a, b, w)) in edge_list.iter().enumerate() {
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange {
                    index,
                    u: a,
                    v: b,
                    n,
                });
            }
            if a == b {
                return Err(GraphError::SelfLoop { index, vertex: a });
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(GraphError::InvalidWeight {
                    index,
                    u: a,
                    v: b,
                    weight: w,
                });
            }
            items.push((Edge::new(a, b), w, index));
        }
        items.sort_by_key(|&(e, _, index)| (e, index));
        for pair in items.windows(2) {
            if pair[0].0 == pair[1].0 {
                let e = pair[1].0;
                return Err(GraphError::DuplicateEdge {
                    index: pair[1].2,
                    u: e.u,
                    v: e.v,
                });
            }
        }
        Ok(Self::from_sorted(
            n,
            items.iter().map(|&(e, w, _)| (e, w)).collect(),
        ))
    }

    /// Builds a unit-weight graph.
    pub fn unweighted(n: usize, edge_list: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let triples: Vec<_> = edge_list.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        Self::new(n, &triples)
    }

    /// `edges` must be sorted, distinct, in range and positively weighted.
    pub(crate) fn from_sorted(n: usize, edges: Vec<(Edge, f64)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        let mut plain = Vec::with_capacity(edges.len());
        let mut weights = Vec::with_capacity(edges.len());
        for (id, &(e, w)) in edges.iter().enumerate() {
            adjacency[e.u].push((e.v, id));
            adjacency[e.v].push((e.u, id));
            plain.push(e);
            weights.push(w);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let unit = weights.iter().all(|&w| w == 1.0);
        let integral = weights
            .iter()
            .all(|&w| w.fract() == 0.0 && w < 2f64.powi(40));
        Graph {
            n,
            edges: plain,
            weights,
            adjacency,
            unit,
            integral,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn weight(&self, id: EdgeId) -> f64 {
        self.weights[id]
    }

    pub fn weighted_edges(&self) -> impl Iterator<Item = (Edge, f64)> + '_ {
        self.edges.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn neighbors(&self, x: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[x]
    }

    pub fn degree(&self, x: VertexId) -> usize {
        self.adjacency[x].len()
    }

    /// True when every edge has weight exactly 1.
    pub fn is_unit_weight(&self) -> bool {
        self.unit
    }

    /// True when every weight is an integer, so path sums are exact.
    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn find_edge(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        if a >= self.n || b >= self.n {
            return None;
        }
        let list = &self.adjacency[a];
        list.binary_search_by_key(&b, |&(x, _)| x)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn edge_id(&self, e: Edge) -> Result<EdgeId, GraphError> {
        self.find_edge(e.u, e.v)
            .ok_or(GraphError::EdgeNotFound(e.u, e.v))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.find_edge(e.u, e.v).is_some()
    }

    /// Same vertex set, keeping the edges selected by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(EdgeId) -> bool) -> Graph {
        let kept = (0..self.m())
            .filter(|&id| keep(id))
            .map(|id| (self.edges[id], self.weights[id]))
            .collect();
        Graph::from_sorted(self.n, kept)
    }

    /// Physically rebuilt copy with one edge removed.
    pub fn without_edge(&self, id: EdgeId) -> Graph {
        self.filter_edges(|other| other != id)
    }

    /// Subgraph of `self` on the same vertices induced by a set of edges of `self`.
    pub fn edge_subgraph<I>(&self, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut keep = vec![false; self.m()];
        for e in edges {
            keep[self.edge_id(e)?] = true;
        }
        Ok(self.filter_edges(|id| keep[id]))
    }

    /// True when `self` has the same vertex count and every edge (with its
    /// weight) also appears in `host`.
    pub fn is_subgraph_of(&self, host: &Graph) -> bool {
        self.n == host.n
            && self.weighted_edges().all(|(e, w)| {
                host.find_edge(e.u, e.v)
                    .is_some_and(|id| host.weight(id) == w)
            })
    }

    /// Copy of the graph with every weight set to 1.
    pub fn to_unit_weight(&self) -> Graph {
        Graph::from_sorted(self.n, self.edges.iter().map(|&e| (e, 1.0)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_triangle() {
        let g = Graph::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert_eq!(
            g.edges(),
            &[Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 2)]
        );
        assert!(g.is_unit_weight());
        for x in 0..3 {
            assert_eq!(g.degree(x), 2);
        }
    }

    #[test]
    fn rejects_self_loop() {
        let err = Graph::new(2, &[(0, 0, 1.0)]).unwrap_err();
        assert_eq!(
            err,
            GraphError::SelfLoop {
                index: 0,
                vertex: 0
            }
        );
    }

    #[test]
    fn rejects_duplicate_edge() {
        let err = Graph::new(4, &[(0, 1, 1.0), (0, 1, 1.0)]).unwrap_err();
        assert_eq!(
            err,
            GraphError::DuplicateEdge {
                index: 1,
                u: 0,
                v: 1
            }
        );
        let err = Graph::new(4, &[(2, 3, 1.0), (0, 1, 1.0), (1, 0, 2.0)]).unwrap_err();
        assert_eq!(
            err,
            GraphError::DuplicateEdge {
                index: 2,
                u: 0,
                v: 1
            }
        );
    }

    #[test]
    fn rejects_bad_weight_and_range() {
        assert!(matches!(
            Graph::new(2, &[(0, 1, 0.0)]),
            Err(GraphError::InvalidWeight { index: 0, .. })
        ));
        assert!(matches!(
            Graph::new(2, &[(0, 1, -1.0)]),
            Err(GraphError::InvalidWeight { .. })
        ));
        assert!(matches!(
            Graph::new(2, &[(0, 1, f64::NAN)]),
            Err(GraphError::InvalidWeight { .. })
        ));
        assert!(matches!(
            Graph::new(2, &[(0, 2, 1.0)]),
            Err(GraphError::VertexOutOfRange { index: 0, .. })
        ));
    }

    #[test]
    fn adjacency_matches_edges() {
        let g = Graph::new(5, &[(4, 0, 2.0), (3, 1, 1.0), (0, 1, 1.5)]).unwrap();
        let mut count = 0;
        for x in 0..g.n() {
            for &(y, id) in g.neighbors(x) {
                assert_eq!(g.edge(id), Edge::new(x, y));
                count += 1;
            }
        }
        assert_eq!(count, 2 * g.m());
        assert_eq!(g.find_edge(0, 4), Some(g.edge_id(Edge::new(0, 4)).unwrap()));
        assert_eq!(g.weight(g.find_edge(4, 0).unwrap()), 2.0);
        assert!(!g.is_unit_weight());
        assert!(!g.is_integral());
    }

    #[test]
    fn subgraph_relation() {
        let g = Graph::unweighted(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s = g.without_edge(0);
        assert!(s.is_subgraph_of(&g));
        assert!(!g.is_subgraph_of(&s));
        assert_eq!(s.m(), 3);
        assert!(!s.contains_edge(Edge::new(0, 1)));
    }

    #[test]
    fn distance_ordering() {
        assert!(Distance::Finite(1e12) < Distance::Unreachable);
        assert_eq!(Distance::Unreachable, Distance::Unreachable);
        assert!(Distance::Finite(2.0) > Distance::Finite(1.0));
        assert_eq!(Distance::Finite(3.0), 3.0);
    }
}
