//! Undirected simple graphs over dense integer ids.
//!
//! A [`Graph`] owns an id range `0..order()`. Removing vertices keeps the
//! remaining ids untouched, so vertex sets computed on a subgraph can be
//! combined with sets computed on the original graph.

mod bridges;
mod components;
pub mod io;
mod random;

pub use bridges::{cycle_vertices, find_bridges, on_cycle};
pub use components::{classify_components, Component, ComponentKind};
pub use random::{gen_random_graph, target_edge_count};

use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// An undirected edge stored as `(min, max)`.
pub type Edge = (Vertex, Vertex);

fn canonical(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    present: Vec<bool>,
    // sorted, no duplicates, only present vertices
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Edgeless graph on `0..n`.
    pub fn new(n: usize) -> Self {
        Graph {
            present: vec![true; n],
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph edges are valid")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    /// Cycle on `0..k`, `k >= 3`.
    pub fn cycle(k: usize) -> Self {
        assert!(k >= 3, "a simple cycle needs at least three vertices");
        let edges = (0..k).map(|v| (v, (v + 1) % k));
        Graph::from_edges(k, edges).expect("cycle edges are valid")
    }

    /// Disjoint union; the vertices of `other` are shifted past `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.order();
        let mut g = self.clone();
        g.present.extend_from_slice(&other.present);
        g.adj.extend(
            other
                .adj
                .iter()
                .map(|nbrs| nbrs.iter().map(|&v| v + offset).collect::<Vec<_>>()),
        );
        g.edge_count += other.edge_count;
        g
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::usage(format!("self-loop on vertex {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::usage(format!("duplicate edge ({u}, {v})"))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edge_count += 1;
                Ok(())
            }
        }
    }

    /// Size of the id range. Removed vertices still count here.
    pub fn order(&self) -> usize {
        self.present.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains(&self, u: Vertex) -> bool {
        self.present.get(u).copied().unwrap_or(false)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.present
            .iter()
            .enumerate()
            .filter_map(|(u, &p)| p.then_some(u))
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Sorted neighbours of `u`. Panics if `u >= order()`.
    pub fn neighbors(&self, u: Vertex) -> &[Vertex] {
        &self.adj[u]
    }

    pub fn degree(&self, u: Vertex) -> Result<usize> {
        self.check_vertex(u)?;
        Ok(self.adj[u].len())
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(u).is_some_and(|n| n.binary_search(&v).is_ok())
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn check_vertex(&self, u: Vertex) -> Result<()> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "vertex {u} is not in the graph (order {})",
                self.order()
            )))
        }
    }
}

/// Induced subgraph on the vertices not in `removed`. Ids are preserved.
pub fn remove_vertices(g: &Graph, removed: &BTreeSet<Vertex>) -> Graph {
    let mut out = g.clone();
    remove_in_place(&mut out, removed.iter().copied());
    out
}

pub(crate) fn remove_in_place<I>(g: &mut Graph, removed: I)
where
    I: IntoIterator<Item = Vertex>,
{
    for u in removed {
        if !g.contains(u) {
            continue;
        }
        let nbrs = std::mem::take(&mut g.adj[u]);
        for &v in &nbrs {
            let pos = g.adj[v].binary_search(&u).expect("adjacency is symmetric");
            g.adj[v].remove(pos);
        }
        g.edge_count -= nbrs.len();
        g.present[u] = false;
    }
}

/// Vertices of degree above two that lie on at least one cycle, ascending.
pub fn critical_vertices(g: &Graph) -> Vec<Vertex> {
    let on_cycle = cycle_vertices(g);
    g.vertices()
        .filter(|&u| g.adj[u].len() > 2 && on_cycle[u])
        .collect()
}
