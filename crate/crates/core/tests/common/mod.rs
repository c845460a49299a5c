//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's search code; graphs are only used as edge lists.
#![allow(dead_code)]

use proptest::prelude::*;
use resilient_spanner::{Edge, Graph};

pub type Triple = (usize, usize, f64);

pub fn triples(g: &Graph) -> Vec<Triple> {
    g.weighted_edges().map(|(e, w)| (e.u, e.v, w)).collect()
}

/// All-pairs distances by |V| rounds of relaxing every edge from every source.
pub fn relaxation_apsp(n: usize, edges: &[Triple]) -> Vec<Vec<f64>> {
    let mut all = vec![vec![f64::INFINITY; n]; n];
    for (s, dist) in all.iter_mut().enumerate() {
        dist[s] = 0.0;
        for _ in 0..n {
            let mut changed = false;
            for &(u, v, w) in edges {
                if dist[u] + w < dist[v] {
                    dist[v] = dist[u] + w;
                    changed = true;
                }
                if dist[v] + w < dist[u] {
                    dist[u] = dist[v] + w;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }
    all
}

/// Floyd-Warshall; faster than [`relaxation_apsp`] on the larger acceptance graphs.
pub fn floyd_warshall(n: usize, edges: &[Triple]) -> Vec<Vec<f64>> {
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (x, row) in d.iter_mut().enumerate() {
        row[x] = 0.0;
    }
    for &(u, v, w) in edges {
        d[u][v] = d[u][v].min(w);
        d[v][u] = d[v][u].min(w);
    }
    for k in 0..n {
        let via = d[k].clone();
        for row in d.iter_mut() {
            let dk = row[k];
            if dk.is_infinite() {
                continue;
            }
            for (cell, &tail) in row.iter_mut().zip(&via) {
                if dk + tail < *cell {
                    *cell = dk + tail;
                }
            }
        }
    }
    d
}

pub fn without(edges: &[Triple], e: Edge) -> Vec<Triple> {
    edges
        .iter()
        .copied()
        .filter(|&(u, v, _)| Edge::new(u, v) != e)
        .collect()
}

/// Largest stretch any pair suffers when `e` is deleted; infinite when some
/// connected pair becomes disconnected.
pub fn oracle_fragility(g: &Graph, e: Edge) -> f64 {
    let edges = triples(g);
    let before = floyd_warshall(g.n(), &edges);
    let after = floyd_warshall(g.n(), &without(&edges, e));
    let mut worst: f64 = 1.0;
    for x in 0..g.n() {
        for y in 0..g.n() {
            if x == y || before[x][y].is_infinite() {
                continue;
            }
            worst = worst.max(after[x][y] / before[x][y]);
        }
    }
    worst
}

pub fn oracle_is_bridge(g: &Graph, e: Edge) -> bool {
    let after = relaxation_apsp(g.n(), &without(&triples(g), e));
    after[e.u][e.v].is_infinite()
}

/// Fewest edges outside `used` on any shortest `u`-`v` path avoiding `e`,
/// by enumerating every such path. `None` when `e` is a bridge.
pub fn min_new_edges_over_shortest_detours(
    g: &Graph,
    e: Edge,
    used: &dyn Fn(Edge) -> bool,
) -> Option<(f64, usize)> {
    let edges = without(&triples(g), e);
    let to_v = &relaxation_apsp(g.n(), &edges)[e.v];
    if to_v[e.u].is_infinite() {
        return None;
    }
    let mut adjacency = vec![Vec::new(); g.n()];
    for &(a, b, w) in &edges {
        adjacency[a].push((b, w));
        adjacency[b].push((a, w));
    }
    fn walk(
        x: usize,
        target: usize,
        new_so_far: usize,
        to_v: &[f64],
        adjacency: &[Vec<(usize, f64)>],
        used: &dyn Fn(Edge) -> bool,
        best: &mut usize,
    ) {
        if new_so_far >= *best {
            return;
        }
        if x == target {
            *best = new_so_far;
            return;
        }
        for &(y, w) in &adjacency[x] {
            if tight(to_v[y] + w, to_v[x]) {
                let fresh = usize::from(!used(Edge::new(x, y)));
                walk(y, target, new_so_far + fresh, to_v, adjacency, used, best);
            }
        }
    }
    let mut best = usize::MAX;
    walk(e.u, e.v, 0, to_v, &adjacency, used, &mut best);
    Some((to_v[e.u], best))
}

pub fn tight(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Hop-count girth by deleting each edge in turn; infinite for forests.
pub fn oracle_girth_hops(n: usize, edges: &[(usize, usize)]) -> f64 {
    let unit: Vec<Triple> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
    edges
        .iter()
        .map(|&(u, v)| 1.0 + relaxation_apsp(n, &without(&unit, Edge::new(u, v)))[u][v])
        .fold(f64::INFINITY, f64::min)
}

/// Simple graphs on `2..=max_n` vertices with weights in `1..=max_w`. When
/// `connected`, a random spanning tree is added first.
pub fn graph_strategy(max_n: usize, max_w: u32, connected: bool) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(move |n| {
        let pairs = prop::collection::vec((0..n, 0..n, 1..=max_w), 0..=(3 * n));
        let parents = prop::collection::vec(any::<prop::sample::Index>(), n - 1);
        let tree_w = prop::collection::vec(1..=max_w, n - 1);
        (Just(n), pairs, parents, tree_w).prop_map(move |(n, pairs, parents, tree_w)| {
            let mut seen = std::collections::BTreeSet::new();
            let mut edges = Vec::new();
            let mut push = |a: usize, b: usize, w: u32| {
                if a != b && seen.insert(Edge::new(a, b)) {
                    edges.push((a, b, f64::from(w)));
                }
            };
            if connected {
                for v in 1..n {
                    push(parents[v - 1].index(v), v, tree_w[v - 1]);
                }
            }
            for (a, b, w) in pairs {
                push(a, b, w);
            }
            Graph::new(n, &edges).expect("strategy builds simple graphs")
        })
    })
}

/// Unit-weight version of [`graph_strategy`].
pub fn unit_graph_strategy(max_n: usize, connected: bool) -> impl Strategy<Value = Graph> {
    graph_strategy(max_n, 1, connected)
}

/// Exact check of `frag_R(e) <= max(sigma, frag_G(e))` on every edge of `r`.
pub fn oracle_resilient(g: &Graph, r: &Graph, sigma: u32) -> bool {
    r.edges()
        .iter()
        .all(|&e| oracle_fragility(r, e) <= f64::from(sigma).max(oracle_fragility(g, e)))
}

/// Exact check of `d_S <= alpha d_G + beta` over all pairs.
pub fn oracle_distortion(g: &Graph, s: &Graph, alpha: f64, beta: f64) -> bool {
    let dg = relaxation_apsp(g.n(), &triples(g));
    let ds = relaxation_apsp(s.n(), &triples(s));
    (0..g.n()).all(|x| {
        (0..g.n()).all(|y| dg[x][y].is_infinite() || ds[x][y] <= alpha * dg[x][y] + beta + 1e-9)
    })
}
