//! Deterministic graph families.

use std::collections::HashSet;
use std::fmt;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fragility::fragility_of;
use crate::graph::{Edge, Graph, VertexId};
use crate::spanners::{verify_fault_tolerance, Spanner};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: String, reason: String },
    #[error("cannot place {m} edges on {n} vertices as a connected simple graph")]
    InfeasibleEdgeCount { n: usize, m: usize },
    #[error("intersection-complement graph for k = {0} is too large (k <= {MAX_K})")]
    TooLarge(usize),
    #[error("not an intersection-complement graph: {0}")]
    NotIntersectionComplement(String),
    #[error("fragility gap gadget needs an even stretch t >= 4, got {0}")]
    OddStretch(u32),
    #[error("fragility gap gadget failed its own verification: {0}")]
    GadgetFailed(String),
}

/// Largest supported `k` for the intersection-complement family
/// (3003 vertices, 378378 edges).
pub const MAX_K: usize = 5;

/// A reproducible description of a generated graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Grid {
        rows: usize,
        cols: usize,
    },
    /// `K_{1,leaves}` centred at vertex 0.
    Star {
        leaves: usize,
    },
    /// Connected: random spanning tree plus random extra edges. Weights are
    /// uniform integers in `1..=max_weight`.
    Random {
        n: usize,
        m: usize,
        seed: u64,
        max_weight: u32,
    },
    /// Bridgeless: random Hamiltonian cycle plus random extra edges.
    RandomBridgeless {
        n: usize,
        m: usize,
        seed: u64,
        max_weight: u32,
    },
    /// k-subsets of a 3k-set, adjacent when disjoint.
    IntersectionComplement {
        k: usize,
    },
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Graph, GeneratorError> {
        match *self {
            GeneratorSpec::Cycle { n } => cycle(n),
            GeneratorSpec::Path { n } => path(n),
            GeneratorSpec::Complete { n } => complete(n),
            GeneratorSpec::Grid { rows, cols } => grid(rows, cols),
            GeneratorSpec::Star { leaves } => star(leaves),
            GeneratorSpec::Random {
                n,
                m,
                seed,
                max_weight,
            } => random_connected(n, m, seed, max_weight),
            GeneratorSpec::RandomBridgeless {
                n,
                m,
                seed,
                max_weight,
            } => random_bridgeless(n, m, seed, max_weight),
            GeneratorSpec::IntersectionComplement { k } => intersection_complement(k),
        }
    }

    /// Parses the command-line form, e.g. `random 30 90 7` or `grid 2 3`.
    pub fn parse(family: &str, params: &[String]) -> Result<Self, GeneratorError> {
        let bad = |reason: &str| GeneratorError::InvalidParameters {
            family: family.to_owned(),
            reason: reason.to_owned(),
        };
        let nums: Vec<u64> = params
            .iter()
            .map(|p| p.parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad("parameters must be non-negative integers"))?;
        let arg = |i: usize| nums[i] as usize;
        let expect = |count: std::ops::RangeInclusive<usize>| {
            if count.contains(&nums.len()) {
                Ok(())
            } else {
                Err(bad(&format!(
                    "expected {count:?} parameters, got {}",
                    nums.len()
                )))
            }
        };
        let spec = match family {
            "cycle" => expect(1..=1).map(|_| GeneratorSpec::Cycle { n: arg(0) }),
            "path" => expect(1..=1).map(|_| GeneratorSpec::Path { n: arg(0) }),
            "complete" => expect(1..=1).map(|_| GeneratorSpec::Complete { n: arg(0) }),
            "grid" => expect(2..=2).map(|_| GeneratorSpec::Grid {
                rows: arg(0),
                cols: arg(1),
            }),
            "star" => expect(1..=1).map(|_| GeneratorSpec::Star { leaves: arg(0) }),
            "random" | "random-2ec" => expect(3..=4).map(|_| {
                let (n, m, seed) = (arg(0), arg(1), nums[2]);
                let max_weight = nums.get(3).map_or(1, |&w| w as u32);
                if family == "random" {
                    GeneratorSpec::Random {
                        n,
                        m,
                        seed,
                        max_weight,
                    }
                } else {
                    GeneratorSpec::RandomBridgeless {
                        n,
                        m,
                        seed,
                        max_weight,
                    }
                }
            }),
            "intersection-complement" | "i3k" => {
                expect(1..=1).map(|_| GeneratorSpec::IntersectionComplement { k: arg(0) })
            }
            _ => Err(bad("unknown family")),
        }?;
        Ok(spec)
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeneratorSpec::Cycle { n } => write!(f, "cycle {n}"),
            GeneratorSpec::Path { n } => write!(f, "path {n}"),
            GeneratorSpec::Complete { n } => write!(f, "complete {n}"),
            GeneratorSpec::Grid { rows, cols } => write!(f, "grid {rows} {cols}"),
            GeneratorSpec::Star { leaves } => write!(f, "star {leaves}"),
            GeneratorSpec::Random {
                n,
                m,
                seed,
                max_weight,
            } => {
                write!(f, "random {n} {m} {seed} {max_weight}")
            }
            GeneratorSpec::RandomBridgeless {
                n,
                m,
                seed,
                max_weight,
            } => {
                write!(f, "random-2ec {n} {m} {seed} {max_weight}")
            }
            GeneratorSpec::IntersectionComplement { k } => write!(f, "intersection-complement {k}"),
        }
    }
}

fn invalid(family: &str, reason: &str) -> GeneratorError {
    GeneratorError::InvalidParameters {
        family: family.to_owned(),
        reason: reason.to_owned(),
    }
}

fn unit(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Graph {
    let pairs: Vec<_> = edges.into_iter().collect();
    Graph::unweighted(n, &pairs).expect("generator produces a simple graph")
}

pub fn cycle(n: usize) -> Result<Graph, GeneratorError> {
    if n < 3 {
        return Err(invalid("cycle", "needs n >= 3"));
    }
    Ok(unit(n, (0..n).map(|i| (i, (i + 1) % n))))
}

pub fn path(n: usize) -> Result<Graph, GeneratorError> {
    if n < 1 {
        return Err(invalid("path", "needs n >= 1"));
    }
    Ok(unit(n, (1..n).map(|i| (i - 1, i))))
}

pub fn complete(n: usize) -> Result<Graph, GeneratorError> {
    if n < 1 {
        return Err(invalid("complete", "needs n >= 1"));
    }
    Ok(unit(
        n,
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))),
    ))
}

/// `rows x cols` grid, vertex `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Result<Graph, GeneratorError> {
    if rows < 1 || cols < 1 {
        return Err(invalid("grid", "needs rows, cols >= 1"));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Ok(unit(rows * cols, edges))
}

pub fn star(leaves: usize) -> Result<Graph, GeneratorError> {
    if leaves < 1 {
        return Err(invalid("star", "needs at least one leaf"));
    }
    Ok(unit(leaves + 1, (1..=leaves).map(|v| (0, v))))
}

fn check_edge_count(n: usize, m: usize, min: usize) -> Result<(), GeneratorError> {
    let max = n * n.saturating_sub(1) / 2;
    if m < min || m > max {
        return Err(GeneratorError::InfeasibleEdgeCount { n, m });
    }
    Ok(())
}

/// Adds `extra` distinct random edges not yet in `present`.
fn add_random_edges(
    rng: &mut ChaCha8Rng,
    n: usize,
    present: &mut HashSet<Edge>,
    chosen: &mut Vec<Edge>,
    extra: usize,
) {
    let max = n * n.saturating_sub(1) / 2;
    let free = max - present.len();
    if extra == 0 {
        return;
    }
    if extra * 2 > free {
        let candidates: Vec<Edge> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v)))
            .filter(|e| !present.contains(e))
            .collect();
        let mut picked: Vec<usize> = index::sample(rng, candidates.len(), extra).into_vec();
        picked.sort_unstable();
        for i in picked {
            present.insert(candidates[i]);
            chosen.push(candidates[i]);
        }
    } else {
        let mut added = 0;
        while added < extra {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v {
                continue;
            }
            let e = Edge::new(u, v);
            if present.insert(e) {
                chosen.push(e);
                added += 1;
            }
        }
    }
}

fn finish_random(n: usize, mut edges: Vec<Edge>, rng: &mut ChaCha8Rng, max_weight: u32) -> Graph {
    edges.sort_unstable();
    let weighted: Vec<(Edge, f64)> = edges
        .into_iter()
        .map(|e| {
            let w = if max_weight > 1 {
                f64::from(rng.gen_range(1..=max_weight))
            } else {
                1.0
            };
            (e, w)
        })
        .collect();
    Graph::from_sorted(n, weighted)
}

/// Random connected simple graph with exactly `m` edges: a random spanning
/// tree (each vertex of a random order attaches to an earlier one) plus
/// `m - n + 1` distinct random edges.
pub fn random_connected(
    n: usize,
    m: usize,
    seed: u64,
    max_weight: u32,
) -> Result<Graph, GeneratorError> {
    if n == 0 {
        return Err(invalid("random", "needs n >= 1"));
    }
    check_edge_count(n, m, n - 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut present = HashSet::with_capacity(m);
    let mut chosen = Vec::with_capacity(m);
    for i in 1..n {
        let e = Edge::new(order[i], order[rng.gen_range(0..i)]);
        present.insert(e);
        chosen.push(e);
    }
    add_random_edges(&mut rng, n, &mut present, &mut chosen, m - (n - 1));
    Ok(finish_random(n, chosen, &mut rng, max_weight))
}

/// Random 2-edge-connected simple graph with exactly `m` edges: a random
/// Hamiltonian cycle plus `m - n` distinct random chords.
pub fn random_bridgeless(
    n: usize,
    m: usize,
    seed: u64,
    max_weight: u32,
) -> Result<Graph, GeneratorError> {
    if n < 3 {
        return Err(invalid("random-2ec", "needs n >= 3"));
    }
    check_edge_count(n, m, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut present = HashSet::with_capacity(m);
    let mut chosen = Vec::with_capacity(m);
    for i in 0..n {
        let e = Edge::new(order[i], order[(i + 1) % n]);
        present.insert(e);
        chosen.push(e);
    }
    add_random_edges(&mut rng, n, &mut present, &mut chosen, m - n);
    Ok(finish_random(n, chosen, &mut rng, max_weight))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `0..universe` as bitmasks, in lexicographic order.
pub fn k_subsets(universe: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(binomial(universe, k));
    let mut current: Vec<usize> = (0..k).collect();
    if k > universe {
        return out;
    }
    loop {
        out.push(current.iter().fold(0u64, |mask, &i| mask | (1 << i)));
        // Advance to the next combination.
        let Some(pos) = (0..k).rev().find(|&i| current[i] != i + universe - k) else {
            break;
        };
        current[pos] += 1;
        for j in pos + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
    out
}

/// The graph on `k`-subsets of a `3k`-set where two subsets are adjacent
/// iff they are disjoint. Every edge lies in exactly one triangle, formed
/// with the complement of the pair's union.
pub fn intersection_complement(k: usize) -> Result<Graph, GeneratorError> {
    if k == 0 {
        return Err(invalid("intersection-complement", "needs k >= 1"));
    }
    if k > MAX_K {
        return Err(GeneratorError::TooLarge(k));
    }
    let subsets = k_subsets(3 * k, k);
    let n = subsets.len();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if subsets[a] & subsets[b] == 0 {
                edges.push((Edge::new(a, b), 1.0));
            }
        }
    }
    Ok(Graph::from_sorted(n, edges))
}

/// Number of vertices, common degree and edge count of the `k` family.
pub fn intersection_complement_counts(k: usize) -> (usize, usize, usize) {
    let n = binomial(3 * k, k);
    let degree = binomial(2 * k, k);
    (n, degree, n * degree / 2)
}

/// Deletes one edge (the lexicographically largest) from every triangle of
/// a graph in which every edge lies in exactly one triangle.
pub fn triangle_deleted_spanner(g: &Graph) -> Result<Spanner, GeneratorError> {
    let mut keep = vec![true; g.m()];
    for (id, &e) in g.edges().iter().enumerate() {
        let common: Vec<VertexId> = common_neighbors(g, e.u, e.v);
        let [w] = common[..] else {
            return Err(GeneratorError::NotIntersectionComplement(format!(
                "edge {e} lies in {} triangles",
                common.len()
            )));
        };
        let largest = [e, Edge::new(e.u, w), Edge::new(e.v, w)]
            .into_iter()
            .max()
            .expect("three edges");
        keep[id] = largest != e;
    }
    Ok(Spanner::new(g.filter_edges(|id| keep[id]), 2.0, 0.0))
}

pub(crate) fn common_neighbors(g: &Graph, a: VertexId, b: VertexId) -> Vec<VertexId> {
    let (na, nb) = (g.neighbors(a), g.neighbors(b));
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < na.len() && j < nb.len() {
        match na[i].0.cmp(&nb[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(na[i].0);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// A host graph and a 1-edge fault-tolerant `t`-spanner of it in which one
/// edge is far more fragile than in the host.
#[derive(Debug, Clone, PartialEq)]
pub struct FragilityGapGadget {
    pub graph: Graph,
    pub spanner: Spanner,
    /// The edge whose fragility grows from `t` to `t^2 / 2`.
    pub edge: Edge,
    pub host_fragility: f64,
    pub spanner_fragility: f64,
}

/// Builds the gadget for an even `t >= 4` and verifies it exhaustively.
///
/// Vertices `0..=t` form a path closed by the edge `(0, t)`. Each path edge
/// `(i - 1, i)` is paralleled by two internally disjoint paths of length
/// `t / 2`. The spanner drops the `t` path edges: every dropped edge keeps
/// two detours of length `t / 2`, so one failure still leaves stretch
/// `t / 2`, yet the detour around `(0, t)` grows from `t` to `t * t / 2`.
pub fn gen_fragility_gap_gadget(t: u32) -> Result<FragilityGapGadget, GeneratorError> {
    if t < 4 || !t.is_multiple_of(2) {
        return Err(GeneratorError::OddStretch(t));
    }
    let spine = t as usize;
    let half = spine / 2;
    let mut next = spine + 1;
    let mut edges = vec![(0, spine)];
    let mut spine_edges = Vec::new();
    for i in 1..=spine {
        edges.push((i - 1, i));
        spine_edges.push(Edge::new(i - 1, i));
        for _ in 0..2 {
            let mut prev = i - 1;
            for _ in 0..half - 1 {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, i));
        }
    }
    let graph = unit(next, edges);
    let spanner_graph = graph.filter_edges(|id| !spine_edges.contains(&graph.edge(id)));
    let spanner = Spanner::new(spanner_graph, f64::from(t), 0.0);
    let edge = Edge::new(0, spine);

    let ft = verify_fault_tolerance(&graph, &spanner.subgraph, f64::from(t), 1)
        .map_err(|e| GeneratorError::GadgetFailed(e.to_string()))?;
    if !ft.holds {
        return Err(GeneratorError::GadgetFailed(format!(
            "not 1-edge fault tolerant: {:?}",
            ft.worst
        )));
    }
    let host_fragility = fragility_of(&graph, graph.edge_id(edge).expect("gap edge")).value();
    let spanner_fragility = fragility_of(
        &spanner.subgraph,
        spanner.subgraph.edge_id(edge).expect("gap edge"),
    )
    .value();
    if spanner_fragility < f64::from(t) / 2.0 * host_fragility {
        return Err(GeneratorError::GadgetFailed(format!(
            "fragility grows only from {host_fragility} to {spanner_fragility}"
        )));
    }
    Ok(FragilityGapGadget {
        graph,
        spanner,
        edge,
        host_fragility,
        spanner_fragility,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{bridges, is_connected};

    #[test]
    fn basic_families() {
        let c5 = cycle(5).unwrap();
        assert_eq!((c5.n(), c5.m()), (5, 5));
        assert_eq!(complete(4).unwrap().m(), 6);
        let g = grid(2, 3).unwrap();
        assert_eq!((g.n(), g.m()), (6, 7));
        let s = star(3).unwrap();
        assert_eq!((s.n(), s.m()), (4, 3));
        assert_eq!(path(1).unwrap().m(), 0);
        assert!(cycle(2).is_err());
        assert!(grid(0, 3).is_err());
    }

    #[test]
    fn random_examples() {
        let tree = random_connected(5, 4, 11, 1).unwrap();
        assert_eq!(tree.m(), 4);
        assert!(is_connected(&tree));
        assert_eq!(random_connected(5, 10, 3, 1).unwrap(), complete(5).unwrap());
        let a = random_connected(30, 90, 42, 1).unwrap();
        let b = random_connected(30, 90, 42, 1).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_ne!(a.edges(), random_connected(30, 90, 43, 1).unwrap().edges());
        assert_eq!(
            random_connected(5, 11, 0, 1),
            Err(GeneratorError::InfeasibleEdgeCount { n: 5, m: 11 })
        );
        assert_eq!(
            random_connected(5, 3, 0, 1),
            Err(GeneratorError::InfeasibleEdgeCount { n: 5, m: 3 })
        );
    }

    #[test]
    fn random_weighted_and_bridgeless() {
        let g = random_connected(20, 40, 9, 8).unwrap();
        assert!(g.is_integral());
        assert!(g.weighted_edges().all(|(_, w)| (1.0..=8.0).contains(&w)));
        for seed in 0..10 {
            let g = random_bridgeless(15, 25, seed, 1).unwrap();
            assert_eq!(g.m(), 25);
            assert!(bridges(&g).is_empty());
        }
        let dense = random_bridgeless(8, 27, 1, 1).unwrap();
        assert_eq!(dense.m(), 27);
    }

    #[test]
    fn k_subsets_in_order() {
        assert_eq!(k_subsets(3, 1), vec![0b001, 0b010, 0b100]);
        assert_eq!(
            k_subsets(4, 2),
            vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]
        );
        assert_eq!(k_subsets(9, 3).len(), 84);
    }

    #[test]
    fn intersection_complement_sizes() {
        let g = intersection_complement(1).unwrap();
        assert_eq!(g, complete(3).unwrap());
        let g = intersection_complement(2).unwrap();
        assert_eq!((g.n(), g.m()), (15, 45));
        assert!((0..g.n()).all(|x| g.degree(x) == 6));
        assert_eq!(intersection_complement_counts(3), (84, 20, 840));
        assert_eq!(intersection_complement(6), Err(GeneratorError::TooLarge(6)));
    }

    #[test]
    fn triangle_deletion() {
        let k3 = intersection_complement(1).unwrap();
        assert_eq!(triangle_deleted_spanner(&k3).unwrap().subgraph.m(), 2);
        let i6 = intersection_complement(2).unwrap();
        assert_eq!(triangle_deleted_spanner(&i6).unwrap().subgraph.m(), 30);
        assert!(matches!(
            triangle_deleted_spanner(&complete(4).unwrap()),
            Err(GeneratorError::NotIntersectionComplement(_))
        ));
    }

    #[test]
    fn gadget_contract() {
        for t in [4, 6] {
            let gadget = gen_fragility_gap_gadget(t).unwrap();
            assert_eq!(gadget.host_fragility, f64::from(t));
            assert_eq!(gadget.spanner_fragility, f64::from(t * t / 2));
            assert_eq!(gadget.graph.m() - gadget.spanner.subgraph.m(), t as usize);
        }
        assert_eq!(
            gen_fragility_gap_gadget(3),
            Err(GeneratorError::OddStretch(3))
        );
        assert_eq!(
            gen_fragility_gap_gadget(2),
            Err(GeneratorError::OddStretch(2))
        );
    }

    #[test]
    fn spec_parsing_round_trips_through_display() {
        for spec in [
            GeneratorSpec::Cycle { n: 5 },
            GeneratorSpec::Grid { rows: 2, cols: 3 },
            GeneratorSpec::Random {
                n: 30,
                m: 90,
                seed: 7,
                max_weight: 1,
            },
            GeneratorSpec::RandomBridgeless {
                n: 10,
                m: 20,
                seed: 1,
                max_weight: 8,
            },
            GeneratorSpec::IntersectionComplement { k: 2 },
        ] {
            let text = spec.to_string();
            let mut words = text.split_whitespace();
            let family = words.next().unwrap();
            let params: Vec<String> = words.map(str::to_owned).collect();
            assert_eq!(GeneratorSpec::parse(family, &params).unwrap(), spec);
        }
        assert!(GeneratorSpec::parse("cycle", &["x".into()]).is_err());
        assert!(GeneratorSpec::parse("hypercube", &["3".into()]).is_err());
    }
}
