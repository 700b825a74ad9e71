//! Exact vertex covers for trees and simple cycles, and for graphs whose
//! components are all one of the two.
//!
//! Every choice the textbook procedures leave arbitrary (which leaf, where
//! to start on the cycle) is taken as the lowest vertex id.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{classify_components, Component, ComponentKind, Graph, Vertex};

pub type VertexSet = BTreeSet<Vertex>;

/// Minimum cover of a graph consisting of exactly one tree component.
pub fn tree_vertex_cover(g: &Graph) -> Result<VertexSet> {
    let comp = single_component(g, ComponentKind::Tree)?;
    let mut cover = VertexSet::new();
    tree_cover_into(g, &comp.vertices, &mut cover);
    Ok(cover)
}

/// Cover of size `ceil(k/2)` for a graph that is exactly one simple cycle.
pub fn cycle_vertex_cover(g: &Graph) -> Result<VertexSet> {
    let comp = single_component(g, ComponentKind::SimpleCycle)?;
    let mut cover = VertexSet::new();
    cycle_cover_into(g, &comp.vertices, &mut cover);
    Ok(cover)
}

/// Union of optimal per-component covers. Fails if any component is
/// neither a tree nor a simple cycle.
pub fn cover_special_graph(g: &Graph) -> Result<VertexSet> {
    let mut cover = VertexSet::new();
    for comp in classify_components(g) {
        match comp.kind {
            ComponentKind::Tree => tree_cover_into(g, &comp.vertices, &mut cover),
            ComponentKind::SimpleCycle => cycle_cover_into(g, &comp.vertices, &mut cover),
            ComponentKind::Other => {
                return Err(Error::Contract(format!(
                    "component containing vertex {} is neither a tree nor a simple cycle",
                    comp.vertices[0]
                )))
            }
        }
    }
    Ok(cover)
}

fn single_component(g: &Graph, want: ComponentKind) -> Result<Component> {
    let mut comps = classify_components(g);
    match comps.len() {
        1 if comps[0].kind == want => Ok(comps.pop().unwrap()),
        _ => Err(Error::usage(format!(
            "expected a single {want:?} component, found {}",
            describe(&comps)
        ))),
    }
}

fn describe(comps: &[Component]) -> String {
    if comps.is_empty() {
        return "an empty graph".to_string();
    }
    let kinds: Vec<String> = comps.iter().map(|c| format!("{:?}", c.kind)).collect();
    kinds.join(" + ")
}

// Repeatedly take the lowest-id leaf and put its only neighbour in the
// cover, deleting that neighbour, until the tree has no edges.
fn tree_cover_into(g: &Graph, vertices: &[Vertex], cover: &mut VertexSet) {
    if vertices.len() < 2 {
        return;
    }
    let mut deg: Vec<usize> = vec![0; g.order()];
    let mut leaves = BTreeSet::new();
    for &u in vertices {
        deg[u] = g.neighbors(u).len();
        if deg[u] == 1 {
            leaves.insert(u);
        }
    }
    let mut deleted = vec![false; g.order()];
    while let Some(u) = leaves.pop_first() {
        if deg[u] == 0 {
            continue;
        }
        let parent = *g
            .neighbors(u)
            .iter()
            .find(|&&v| !deleted[v])
            .expect("a leaf has one live neighbour");
        cover.insert(parent);
        deleted[parent] = true;
        leaves.remove(&parent);
        for &w in g.neighbors(parent) {
            if deleted[w] {
                continue;
            }
            deg[w] -= 1;
            match deg[w] {
                0 => {
                    leaves.remove(&w);
                }
                1 => {
                    leaves.insert(w);
                }
                _ => {}
            }
        }
        deg[parent] = 0;
    }
}

// Walk the cycle from its lowest vertex towards the smaller neighbour and
// take every other vertex; for odd length both ends of the closing edge
// are taken.
fn cycle_cover_into(g: &Graph, vertices: &[Vertex], cover: &mut VertexSet) {
    let start = vertices[0];
    let mut prev = start;
    let mut cur = g.neighbors(start)[0];
    cover.insert(start);
    let mut pos = 1;
    while cur != start {
        if pos % 2 == 0 {
            cover.insert(cur);
        }
        let nbrs = g.neighbors(cur);
        let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
        prev = cur;
        cur = next;
        pos += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::is_vertex_cover;

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    #[test]
    fn tree_examples() {
        assert_eq!(
            tree_vertex_cover(&Graph::path(3)).unwrap(),
            VertexSet::from([1])
        );
        assert_eq!(tree_vertex_cover(&star(4)).unwrap(), VertexSet::from([0]));
        assert_eq!(tree_vertex_cover(&Graph::path(2)).unwrap().len(), 1);
        assert!(tree_vertex_cover(&Graph::new(1)).unwrap().is_empty());
    }

    #[test]
    fn tree_rejects_non_trees() {
        assert!(matches!(
            tree_vertex_cover(&Graph::cycle(4)),
            Err(Error::Usage(_))
        ));
        assert!(tree_vertex_cover(&Graph::path(2).disjoint_union(&Graph::path(2))).is_err());
    }

    #[test]
    fn cycle_examples() {
        for (k, want) in [(3, 2), (4, 2), (5, 3)] {
            let g = Graph::cycle(k);
            let c = cycle_vertex_cover(&g).unwrap();
            assert_eq!(c.len(), want);
            assert!(is_vertex_cover(&g, &c));
        }
        assert_eq!(
            cycle_vertex_cover(&Graph::cycle(4)).unwrap(),
            VertexSet::from([0, 2])
        );
        assert!(matches!(
            cycle_vertex_cover(&Graph::path(4)),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn cycle_size_is_half_rounded_up() {
        for k in 3..=100 {
            let g = Graph::cycle(k);
            let c = cycle_vertex_cover(&g).unwrap();
            assert_eq!(c.len(), k.div_ceil(2), "k = {k}");
            assert!(is_vertex_cover(&g, &c));
        }
    }

    #[test]
    fn special_graph_examples() {
        let g = Graph::cycle(4).disjoint_union(&Graph::path(3));
        assert_eq!(cover_special_graph(&g).unwrap().len(), 3);
        assert!(cover_special_graph(&Graph::new(6)).unwrap().is_empty());
        let g = Graph::cycle(5)
            .disjoint_union(&star(4))
            .disjoint_union(&Graph::new(1));
        let c = cover_special_graph(&g).unwrap();
        assert_eq!(c.len(), 4);
        assert!(is_vertex_cover(&g, &c));
        assert!(matches!(
            cover_special_graph(&Graph::complete(4)),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn deterministic() {
        let g = Graph::cycle(7).disjoint_union(&star(3));
        assert_eq!(
            cover_special_graph(&g).unwrap(),
            cover_special_graph(&g).unwrap()
        );
    }
}
