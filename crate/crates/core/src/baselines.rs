//! Reference solvers: the maximal-matching 2-approximation and an exact
//! branch-and-bound used as the oracle for everything else.

use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::rng::SeedRng;
use crate::structured::VertexSet;

/// Default node budget for [`exact_cover`].
pub const DEFAULT_EXACT_BUDGET: u64 = 20_000_000;

pub fn is_vertex_cover(g: &Graph, cover: &VertexSet) -> bool {
    g.edges()
        .all(|(u, v)| cover.contains(&u) || cover.contains(&v))
}

/// How the 2-approximation chooses the next edge.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EdgePick {
    /// Uniform over the remaining edges.
    #[default]
    Random,
    /// Lexicographically smallest remaining edge.
    First,
}

pub fn two_approx_cover(g: &Graph, seed: u64) -> VertexSet {
    two_approx_cover_with(g, EdgePick::Random, seed)
}

/// Take both ends of a remaining edge, drop every edge they touch, repeat.
pub fn two_approx_cover_with(g: &Graph, pick: EdgePick, seed: u64) -> VertexSet {
    let mut rng = SeedRng::seed_from_u64(seed);
    let mut remaining: Vec<Edge> = g.edges().collect();
    let mut cover = VertexSet::new();
    while !remaining.is_empty() {
        let i = match pick {
            EdgePick::Random => rng.gen_range(0..remaining.len()),
            EdgePick::First => 0,
        };
        let (u, v) = remaining[i];
        cover.insert(u);
        cover.insert(v);
        remaining.retain(|&(a, b)| a != u && a != v && b != u && b != v);
    }
    cover
}

pub fn exact_cover(g: &Graph) -> Result<VertexSet> {
    exact_cover_with_budget(g, DEFAULT_EXACT_BUDGET)
}

/// Minimum vertex cover by branch-and-bound.
///
/// Branches on a maximum-degree vertex `v`: either `v` is in the cover or
/// all of its neighbours are. Degree-one vertices are resolved without
/// branching by taking their neighbour. A greedy maximal matching on the
/// residual graph gives the lower bound. Exceeding `budget` search nodes
/// returns [`Error::Budget`] instead of a possibly suboptimal set.
pub fn exact_cover_with_budget(g: &Graph, budget: u64) -> Result<VertexSet> {
    let mut search = Search::new(g, budget);
    search.best = greedy_upper_bound(g);
    search.run()?;
    Ok(search.best.into_iter().collect())
}

fn greedy_upper_bound(g: &Graph) -> Vec<Vertex> {
    let mut work = g.clone();
    let mut cover = Vec::new();
    while work.edge_count() > 0 {
        let v = work
            .vertices()
            .max_by_key(|&u| (work.neighbors(u).len(), std::cmp::Reverse(u)))
            .unwrap();
        cover.push(v);
        crate::graph::remove_in_place(&mut work, [v]);
    }
    cover
}

struct Search<'g> {
    g: &'g Graph,
    alive: Vec<bool>,
    deg: Vec<usize>,
    edges_left: usize,
    chosen: Vec<Vertex>,
    best: Vec<Vertex>,
    nodes: u64,
    budget: u64,
    // scratch for the matching bound
    matched: Vec<bool>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, budget: u64) -> Self {
        let n = g.order();
        let mut alive = vec![false; n];
        let mut deg = vec![0; n];
        for u in g.vertices() {
            alive[u] = true;
            deg[u] = g.neighbors(u).len();
        }
        Search {
            g,
            alive,
            deg,
            edges_left: g.edge_count(),
            chosen: Vec::new(),
            best: Vec::new(),
            nodes: 0,
            budget,
            matched: vec![false; n],
        }
    }

    fn run(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget {
                budget: self.budget,
            });
        }
        if self.edges_left == 0 {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return Ok(());
        }
        if self.chosen.len() + self.matching_bound() >= self.best.len() {
            return Ok(());
        }

        let g = self.g;
        let mut pendant = None;
        let mut branch = None;
        for u in 0..g.order() {
            if !self.alive[u] {
                continue;
            }
            if self.deg[u] == 1 {
                pendant = Some(u);
                break;
            }
            if branch.is_none_or(|b| self.deg[u] > self.deg[b]) {
                branch = Some(u);
            }
        }

        if let Some(u) = pendant {
            let v = self.live_neighbors(u).next().unwrap();
            return self.with_taken(&[v], Self::run);
        }

        let v = branch.expect("edges remain, so some vertex has positive degree");
        self.with_taken(&[v], Self::run)?;
        let nbrs: Vec<Vertex> = self.live_neighbors(v).collect();
        if self.chosen.len() + nbrs.len() < self.best.len() {
            self.with_taken(&nbrs, Self::run)?;
        }
        Ok(())
    }

    fn live_neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| self.alive[w])
    }

    fn with_taken(&mut self, vs: &[Vertex], f: impl FnOnce(&mut Self) -> Result<()>) -> Result<()> {
        for &v in vs {
            self.take(v);
        }
        let r = f(self);
        for &v in vs.iter().rev() {
            self.restore(v);
        }
        r
    }

    fn take(&mut self, v: Vertex) {
        self.alive[v] = false;
        for &w in self.g.neighbors(v) {
            if self.alive[w] {
                self.deg[w] -= 1;
                self.edges_left -= 1;
            }
        }
        self.chosen.push(v);
    }

    fn restore(&mut self, v: Vertex) {
        let popped = self.chosen.pop();
        debug_assert_eq!(popped, Some(v));
        for &w in self.g.neighbors(v) {
            if self.alive[w] {
                self.deg[w] += 1;
                self.edges_left += 1;
            }
        }
        self.alive[v] = true;
    }

    // any cover needs a distinct vertex per matched edge
    fn matching_bound(&mut self) -> usize {
        self.matched.iter_mut().for_each(|m| *m = false);
        let mut size = 0;
        for u in 0..self.g.order() {
            if !self.alive[u] || self.matched[u] {
                continue;
            }
            if let Some(v) = self
                .g
                .neighbors(u)
                .iter()
                .copied()
                .find(|&w| self.alive[w] && !self.matched[w])
            {
                self.matched[u] = true;
                self.matched[v] = true;
                size += 1;
            }
        }
        size
    }
}
