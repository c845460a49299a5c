//! Bridges and 2-edge-connected components.

use crate::graph::{EdgeId, Graph, VertexId};

/// Per-edge flag: `true` for edges that lie on no cycle.
pub fn bridge_mask(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let mut is_bridge = vec![false; g.m()];
    let mut discovered = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut clock = 0;
    // (vertex, edge used to enter it, next adjacency index)
    let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = Vec::new();

    for root in 0..n {
        if discovered[root] != usize::MAX {
            continue;
        }
        discovered[root] = clock;
        low[root] = clock;
        clock += 1;
        stack.push((root, None, 0));

        while let Some(frame) = stack.last_mut() {
            let (x, via, next) = *frame;
            if let Some(&(y, id)) = g.neighbors(x).get(next) {
                frame.2 += 1;
                if Some(id) == via {
                    continue;
                }
                if discovered[y] == usize::MAX {
                    discovered[y] = clock;
                    low[y] = clock;
                    clock += 1;
                    stack.push((y, Some(id), 0));
                } else {
                    low[x] = low[x].min(discovered[y]);
                }
            } else {
                stack.pop();
                if let (Some(id), Some(&(parent, _, _))) = (via, stack.last()) {
                    low[parent] = low[parent].min(low[x]);
                    if low[x] > discovered[parent] {
                        is_bridge[id] = true;
                    }
                }
            }
        }
    }
    is_bridge
}

/// Ids of all bridges, in edge order.
pub fn bridges(g: &Graph) -> Vec<EdgeId> {
    bridge_mask(g)
        .into_iter()
        .enumerate()
        .filter_map(|(id, b)| b.then_some(id))
        .collect()
}

/// Component index of every vertex after deleting all bridges. Components
/// are numbered in order of their smallest vertex.
pub fn two_edge_component_ids(g: &Graph) -> Vec<usize> {
    let is_bridge = bridge_mask(g);
    let mut comp = vec![usize::MAX; g.n()];
    let mut next = 0;
    let mut stack = Vec::new();
    for start in 0..g.n() {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = next;
        stack.push(start);
        while let Some(x) = stack.pop() {
            for &(y, id) in g.neighbors(x) {
                if !is_bridge[id] && comp[y] == usize::MAX {
                    comp[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Maximal 2-edge-connected vertex classes, each sorted, ordered by their
/// smallest vertex.
pub fn two_edge_connected_components(g: &Graph) -> Vec<Vec<VertexId>> {
    let ids = two_edge_component_ids(g);
    let count = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut classes = vec![Vec::new(); count];
    for (x, &c) in ids.iter().enumerate() {
        classes[c].push(x);
    }
    classes
}

/// Connected component index of every vertex.
pub fn connected_component_ids(g: &Graph) -> Vec<usize> {
    let mut comp = vec![usize::MAX; g.n()];
    let mut next = 0;
    for start in 0..g.n() {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = next;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(y, _) in g.neighbors(x) {
                if comp[y] == usize::MAX {
                    comp[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    comp
}

pub fn is_connected(g: &Graph) -> bool {
    connected_component_ids(g).iter().all(|&c| c == 0)
}
