//! Single-source shortest paths, replacement paths and girth.
//!
//! Unit-weight graphs are searched breadth-first, weighted graphs with a
//! binary-heap Dijkstra. Path reconstruction always picks the smallest
//! vertex id among the tight predecessors, so every returned path is
//! reproducible.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use crate::graph::{cmp_weight, same_weight, Distance, EdgeId, Graph, Path, VertexId};
use crate::resilient::BackupCycle;

#[derive(Clone, Copy, PartialEq)]
struct HeapEntry {
    dist: f64,
    vertex: VertexId,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Raw distances from `src` (infinity when unreachable), skipping `excluded`.
///
/// With `target` set the search may stop early; distances are then exact for
/// every vertex strictly closer than the target, which is all that path
/// reconstruction needs.
pub(crate) fn raw_distances(
    g: &Graph,
    src: VertexId,
    excluded: Option<EdgeId>,
    target: Option<VertexId>,
) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; g.n()];
    dist[src] = 0.0;
    if Some(src) == target {
        return dist;
    }
    if g.is_unit_weight() {
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            let next = dist[x] + 1.0;
            for &(y, id) in g.neighbors(x) {
                if Some(id) == excluded || dist[y].is_finite() {
                    continue;
                }
                dist[y] = next;
                if Some(y) == target {
                    return dist;
                }
                queue.push_back(y);
            }
        }
    } else {
        let mut done = vec![false; g.n()];
        let mut heap = BinaryHeap::from([HeapEntry {
            dist: 0.0,
            vertex: src,
        }]);
        while let Some(HeapEntry { dist: d, vertex: x }) = heap.pop() {
            if std::mem::replace(&mut done[x], true) {
                continue;
            }
            if Some(x) == target {
                break;
            }
            for &(y, id) in g.neighbors(x) {
                if Some(id) == excluded || done[y] {
                    continue;
                }
                let candidate = d + g.weight(id);
                if candidate < dist[y] {
                    dist[y] = candidate;
                    heap.push(HeapEntry {
                        dist: candidate,
                        vertex: y,
                    });
                }
            }
        }
    }
    dist
}

/// Walks back from `target` choosing the smallest tight predecessor.
pub(crate) fn trace_path(
    g: &Graph,
    dist: &[f64],
    src: VertexId,
    target: VertexId,
    excluded: Option<EdgeId>,
) -> Path {
    let mut vertices = vec![target];
    let mut x = target;
    while x != src {
        let pred = g
            .neighbors(x)
            .iter()
            .find(|&&(p, id)| {
                Some(id) != excluded
                    && dist[p] < dist[x]
                    && same_weight(dist[p] + g.weight(id), dist[x])
            })
            .map(|&(p, _)| p)
            .expect("finite distance implies a tight predecessor");
        vertices.push(pred);
        x = pred;
    }
    vertices.reverse();
    Path {
        vertices,
        weight: dist[target],
    }
}

/// Exact single-source distances.
pub fn sssp(g: &Graph, src: VertexId) -> Vec<Distance> {
    raw_distances(g, src, None, None)
        .into_iter()
        .map(Distance::from_raw)
        .collect()
}

/// Shortest path from `src` to `dst`, if any.
pub fn shortest_path(g: &Graph, src: VertexId, dst: VertexId) -> Option<Path> {
    let dist = raw_distances(g, src, None, Some(dst));
    dist[dst]
        .is_finite()
        .then(|| trace_path(g, &dist, src, dst, None))
}

/// Distance from `x` to `y` in `g` with edge `e` removed, plus a witness path.
pub fn distance_avoiding_edge(
    g: &Graph,
    x: VertexId,
    y: VertexId,
    e: EdgeId,
) -> (Distance, Option<Path>) {
    let dist = raw_distances(g, x, Some(e), Some(y));
    if dist[y].is_finite() {
        let path = trace_path(g, &dist, x, y, Some(e));
        (Distance::Finite(dist[y]), Some(path))
    } else {
        (Distance::Unreachable, None)
    }
}

/// Length of a shortest cycle: edge count for unit weights, total weight
/// otherwise. Forests have no cycle and report `Unreachable`.
pub fn girth(g: &Graph) -> Distance {
    let mut best = f64::INFINITY;
    for root in 0..g.n() {
        let (dist, parent_edge) = search_tree(g, root);
        for (id, e) in g.edges().iter().enumerate() {
            if !dist[e.u].is_finite()
                || parent_edge[e.u] == Some(id)
                || parent_edge[e.v] == Some(id)
            {
                continue;
            }
            let closed = dist[e.u] + dist[e.v] + g.weight(id);
            if cmp_weight(closed, best) == Ordering::Less {
                best = closed;
            }
        }
    }
    Distance::from_raw(best)
}

/// Shortest-path tree from `root` as distances and tree edges.
fn search_tree(g: &Graph, root: VertexId) -> (Vec<f64>, Vec<Option<EdgeId>>) {
    let dist = raw_distances(g, root, None, None);
    let mut parent = vec![None; g.n()];
    for x in 0..g.n() {
        if x == root || !dist[x].is_finite() {
            continue;
        }
        parent[x] = g
            .neighbors(x)
            .iter()
            .find(|&&(p, id)| dist[p] < dist[x] && same_weight(dist[p] + g.weight(id), dist[x]))
            .map(|&(_, id)| id);
    }
    (dist, parent)
}

/// A minimum-weight cycle through `e`: the edge plus a shortest replacement
/// path between its endpoints. `None` iff `e` is a bridge.
pub fn short_cycle(g: &Graph, e: EdgeId) -> Option<BackupCycle> {
    let edge = g.edge(e);
    let (_, path) = distance_avoiding_edge(g, edge.u, edge.v, e);
    path.map(|path| BackupCycle {
        edge,
        new_edges: path.hops(),
        path,
    })
}
