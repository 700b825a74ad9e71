//! Genetic search over the critical vertices of a graph.
//!
//! A chromosome carries one bit per critical vertex (vertices of degree
//! above two that sit on a cycle). Decoding settles those vertices first;
//! what is left of the graph is a disjoint union of trees and simple
//! cycles, which [`cover_special_graph`] covers optimally.

use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{critical_vertices, remove_in_place, Graph, Vertex};
use crate::rng::SeedRng;
use crate::solve::{CoverSolution, SolverKind};
use crate::structured::{cover_special_graph, VertexSet};

/// Bit `k` decides the `k`-th critical vertex in ascending id order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chromosome {
    pub bits: Vec<bool>,
}

impl Chromosome {
    pub fn new(bits: Vec<bool>) -> Self {
        Chromosome { bits }
    }

    pub fn zeros(len: usize) -> Self {
        Chromosome::new(vec![false; len])
    }

    pub fn ones(len: usize) -> Self {
        Chromosome::new(vec![true; len])
    }

    /// Bit `k` is bit `k` of `mask`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        Chromosome::new((0..len).map(|k| mask >> k & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MutationMode {
    /// With probability `mutation_rate`, flip one uniformly chosen bit of the offspring.
    #[default]
    PerOffspring,
    /// Flip every bit independently with probability `mutation_rate`.
    PerBit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaParams {
    /// Population size is `max(2, round(population_multiplier * |C|))`.
    pub population_multiplier: f64,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub mutation_mode: MutationMode,
    /// Stop after this many generations without a strictly better best.
    pub stall_generations: usize,
    pub max_generations: usize,
    pub seed: u64,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            population_multiplier: 1.0,
            crossover_rate: 0.5,
            mutation_rate: 0.5,
            mutation_mode: MutationMode::PerOffspring,
            stall_generations: 10,
            max_generations: 1000,
            seed: 0,
        }
    }
}

impl GaParams {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_rates(mut self, crossover: f64, mutation: f64) -> Self {
        self.crossover_rate = crossover;
        self.mutation_rate = mutation;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let rate_ok = |r: f64| (0.0..=1.0).contains(&r);
        if !(self.population_multiplier.is_finite() && self.population_multiplier > 0.0) {
            return Err(Error::usage("population multiplier must be positive"));
        }
        if !rate_ok(self.crossover_rate) || !rate_ok(self.mutation_rate) {
            return Err(Error::usage(
                "crossover and mutation rates must lie in [0, 1]",
            ));
        }
        if self.stall_generations == 0 || self.max_generations == 0 {
            return Err(Error::usage("generation limits must be positive"));
        }
        Ok(())
    }

    pub fn population_size(&self, critical: usize) -> usize {
        ((self.population_multiplier * critical as f64).round() as usize).max(2)
    }
}

/// `|cover| / n`; lower is better.
pub fn fitness(g: &Graph, cover: &VertexSet) -> f64 {
    if g.order() == 0 {
        0.0
    } else {
        cover.len() as f64 / g.order() as f64
    }
}

/// A graph together with its critical vertices, ready to decode chromosomes.
pub struct Decoder<'g> {
    g: &'g Graph,
    critical: Vec<Vertex>,
}

impl<'g> Decoder<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Decoder {
            g,
            critical: critical_vertices(g),
        }
    }

    pub fn critical(&self) -> &[Vertex] {
        &self.critical
    }

    pub fn chromosome_len(&self) -> usize {
        self.critical.len()
    }

    /// Critical vertices are visited in ascending order, skipping any
    /// already removed. A 1-bit puts the vertex itself in the cover; a
    /// 0-bit puts all of its current neighbours in and leaves it isolated.
    /// The residual trees and cycles are then covered exactly.
    pub fn decode(&self, c: &Chromosome) -> Result<VertexSet> {
        if c.len() != self.critical.len() {
            return Err(Error::usage(format!(
                "chromosome has {} bits but the graph has {} critical vertices",
                c.len(),
                self.critical.len()
            )));
        }
        let mut work = self.g.clone();
        let mut cover = VertexSet::new();
        for (&u, &bit) in self.critical.iter().zip(&c.bits) {
            if !work.contains(u) {
                continue;
            }
            if bit {
                cover.insert(u);
                remove_in_place(&mut work, [u]);
            } else {
                let nbrs = work.neighbors(u).to_vec();
                cover.extend(nbrs.iter().copied());
                remove_in_place(&mut work, nbrs);
            }
        }
        cover.extend(cover_special_graph(&work)?);
        Ok(cover)
    }
}

pub fn decode(g: &Graph, c: &Chromosome) -> Result<VertexSet> {
    Decoder::new(g).decode(c)
}

pub fn evolve(g: &Graph, params: &GaParams) -> Result<CoverSolution> {
    evolve_traced(g, params).map(|(s, _)| s)
}

/// Like [`evolve`], also returning the best fitness after initialisation
/// and after every generation.
pub fn evolve_traced(g: &Graph, params: &GaParams) -> Result<(CoverSolution, Vec<f64>)> {
    params.validate()?;
    let decoder = Decoder::new(g);
    let len = decoder.chromosome_len();
    let solution = |cover: VertexSet, generations| CoverSolution {
        fitness: fitness(g, &cover),
        cover,
        solver: SolverKind::HybridGa,
        seed: params.seed,
        generations,
    };

    if len == 0 {
        let cover = decoder.decode(&Chromosome::zeros(0))?;
        let f = fitness(g, &cover);
        return Ok((solution(cover, 0), vec![f]));
    }

    let pop_size = params.population_size(len);
    let mut rng = SeedRng::seed_from_u64(params.seed);
    let mut population: Vec<Chromosome> = (0..pop_size)
        .map(|_| Chromosome::new((0..len).map(|_| rng.gen_bool(0.5)).collect()))
        .collect();
    let mut covers = evaluate(&decoder, &population)?;

    let mut best_idx = argmin(&covers);
    let mut best = (population[best_idx].clone(), covers[best_idx].clone());
    let mut history = vec![fitness(g, &best.1)];
    let mut generations = 0;
    let mut stall = 0;

    while stall < params.stall_generations && generations < params.max_generations {
        let mut next = Vec::with_capacity(pop_size);
        next.push(best.0.clone());
        while next.len() < pop_size {
            let a = tournament(&mut rng, &covers);
            let b = tournament(&mut rng, &covers);
            let mut c1 = population[a].bits.clone();
            let mut c2 = population[b].bits.clone();
            if rng.gen_bool(params.crossover_rate) && len >= 2 {
                let cut = rng.gen_range(1..len);
                c1[cut..].swap_with_slice(&mut c2[cut..]);
            }
            mutate(&mut rng, &mut c1, params);
            mutate(&mut rng, &mut c2, params);
            next.push(Chromosome::new(c1));
            if next.len() < pop_size {
                next.push(Chromosome::new(c2));
            }
        }
        population = next;
        covers = evaluate(&decoder, &population)?;
        generations += 1;

        best_idx = argmin(&covers);
        if covers[best_idx].len() < best.1.len() {
            best = (population[best_idx].clone(), covers[best_idx].clone());
            stall = 0;
        } else {
            stall += 1;
        }
        history.push(fitness(g, &best.1));
    }

    Ok((solution(best.1, generations), history))
}

fn evaluate(decoder: &Decoder<'_>, population: &[Chromosome]) -> Result<Vec<VertexSet>> {
    population.par_iter().map(|c| decoder.decode(c)).collect()
}

fn argmin(covers: &[VertexSet]) -> usize {
    covers
        .iter()
        .enumerate()
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
        .expect("population is non-empty")
}

// binary tournament; ties go to the first draw
fn tournament(rng: &mut SeedRng, covers: &[VertexSet]) -> usize {
    let i = rng.gen_range(0..covers.len());
    let j = rng.gen_range(0..covers.len());
    if covers[j].len() < covers[i].len() {
        j
    } else {
        i
    }
}

fn mutate(rng: &mut SeedRng, bits: &mut [bool], params: &GaParams) {
    match params.mutation_mode {
        MutationMode::PerOffspring => {
            if rng.gen_bool(params.mutation_rate) {
                let k = rng.gen_range(0..bits.len());
                bits[k] = !bits[k];
            }
        }
        MutationMode::PerBit => {
            for b in bits.iter_mut() {
                if rng.gen_bool(params.mutation_rate) {
                    *b = !*b;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::{exact_cover, is_vertex_cover};
    use crate::graph::gen_random_graph;

    #[test]
    fn triangle_has_no_critical_vertices() {
        let g = Graph::cycle(3);
        let cover = decode(&g, &Chromosome::zeros(0)).unwrap();
        assert_eq!(cover.len(), 2);
        assert!(is_vertex_cover(&g, &cover));
    }

    #[test]
    fn k4_traces() {
        let g = Graph::complete(4);
        let c = Chromosome::new(vec![true, true, true, false]);
        assert_eq!(decode(&g, &c).unwrap(), VertexSet::from([0, 1, 2]));
        assert_eq!(
            decode(&g, &Chromosome::zeros(4)).unwrap(),
            VertexSet::from([1, 2, 3])
        );
        assert_eq!(decode(&g, &Chromosome::ones(4)).unwrap().len(), 4);
    }

    #[test]
    fn length_mismatch_is_usage_error() {
        let g = Graph::complete(4);
        assert!(matches!(
            decode(&g, &Chromosome::zeros(3)),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn fitness_examples() {
        let g = Graph::complete(4);
        assert_eq!(fitness(&g, &VertexSet::from([0, 1, 2])), 0.75);
        assert_eq!(fitness(&g, &VertexSet::new()), 0.0);
        assert_eq!(fitness(&g, &VertexSet::from([0, 1, 2, 3])), 1.0);
    }

    #[test]
    fn every_chromosome_decodes_to_a_cover() {
        let mut checked = 0;
        for seed in 0..120u64 {
            let g = gen_random_graph(6 + (seed % 9) as usize, 0.3, seed);
            let dec = Decoder::new(&g);
            let len = dec.chromosome_len();
            if len > 10 {
                continue;
            }
            let opt = exact_cover(&g).unwrap().len();
            for mask in 0..1u64 << len {
                let c = Chromosome::from_mask(len, mask);
                let cover = dec.decode(&c).unwrap();
                assert!(is_vertex_cover(&g, &cover));
                assert!(cover.len() >= opt);
                if mask == (1 << len) - 1 {
                    assert!(dec.critical().iter().all(|u| cover.contains(u)));
                }
            }
            checked += 1;
        }
        assert!(checked > 50);
    }

    #[test]
    fn evolve_short_circuits() {
        let sol = evolve(&Graph::new(5), &GaParams::default()).unwrap();
        assert!(sol.cover.is_empty());
        assert_eq!(sol.fitness, 0.0);
        assert_eq!(sol.generations, 0);

        let g = Graph::cycle(4).disjoint_union(&Graph::path(3));
        let sol = evolve(&g, &GaParams::default()).unwrap();
        assert_eq!(sol.fitness, 3.0 / 7.0);
    }

    #[test]
    fn evolve_is_elitist_and_deterministic() {
        let g = gen_random_graph(40, 0.3, 3);
        let params = GaParams::default().with_seed(17);
        let (a, hist) = evolve_traced(&g, &params).unwrap();
        assert!(hist.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(hist.len(), a.generations + 1);
        assert!(is_vertex_cover(&g, &a.cover));
        let b = evolve(&g, &params).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn per_bit_mode_and_single_bit_chromosomes() {
        // a triangle with one chord vertex: a single critical vertex
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3), (2, 3)]).unwrap();
        let dec = Decoder::new(&g);
        assert_eq!(dec.critical(), &[0, 2]);
        let bowtie =
            Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let params = GaParams {
            mutation_mode: MutationMode::PerBit,
            mutation_rate: 0.2,
            ..GaParams::default()
        };
        let sol = evolve(&bowtie, &params).unwrap();
        assert_eq!(sol.cover.len(), 3);
    }

    #[test]
    fn rejects_bad_params() {
        let g = Graph::complete(5);
        let bad = GaParams::default().with_rates(1.5, 0.5);
        assert!(matches!(evolve(&g, &bad), Err(Error::Usage(_))));
        let bad = GaParams {
            stall_generations: 0,
            ..GaParams::default()
        };
        assert!(evolve(&g, &bad).is_err());
        assert_eq!(GaParams::default().population_size(0), 2);
        assert_eq!(GaParams::default().population_size(7), 7);
    }
}
