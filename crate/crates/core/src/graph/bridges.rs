use std::collections::BTreeSet;

use super::{canonical, Edge, Graph, Vertex};
use crate::error::Result;

/// Edges whose removal disconnects their component.
///
/// Iterative low-link DFS, linear in the size of the graph.
pub fn find_bridges(g: &Graph) -> BTreeSet<Edge> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut bridges = BTreeSet::new();
    let mut clock = 0;
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();

    for root in g.vertices() {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = clock;
        low[root] = clock;
        clock += 1;
        stack.push((root, usize::MAX, 0));

        while let Some(frame) = stack.last_mut() {
            let (u, parent, idx) = *frame;
            if let Some(&v) = g.neighbors(u).get(idx) {
                frame.2 += 1;
                if v == parent {
                    continue;
                }
                if disc[v] == usize::MAX {
                    disc[v] = clock;
                    low[v] = clock;
                    clock += 1;
                    stack.push((v, u, 0));
                } else {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] > disc[parent] {
                        bridges.insert(canonical(parent, u));
                    }
                }
            }
        }
    }
    bridges
}

/// Per-vertex cycle membership: a vertex lies on a cycle iff one of its
/// edges is not a bridge. Indexed by vertex id; removed ids are `false`.
pub fn cycle_vertices(g: &Graph) -> Vec<bool> {
    let bridges = find_bridges(g);
    let mut on = vec![false; g.order()];
    for (u, v) in g.edges() {
        if !bridges.contains(&(u, v)) {
            on[u] = true;
            on[v] = true;
        }
    }
    on
}

pub fn on_cycle(g: &Graph, u: Vertex) -> Result<bool> {
    g.degree(u)?;
    let bridges = find_bridges(g);
    Ok(g.neighbors(u)
        .iter()
        .any(|&v| !bridges.contains(&canonical(u, v))))
}
