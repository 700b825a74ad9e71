use std::collections::BTreeSet;

use lcs_core::baselines::{exact_cover, is_vertex_cover, two_approx_cover};
use lcs_core::graph::{
    classify_components, critical_vertices, gen_random_graph, remove_vertices, target_edge_count,
    ComponentKind, Graph,
};
use lcs_core::hybrid_ga::{decode, evolve, Chromosome, Decoder, GaParams};
use lcs_core::phylogeny::{
    build_perfect_phylogeny, compatible, conflict_graph, is_compatible_subset,
    is_perfect_phylogeny, largest_compatible_subset_named, species_set, verify_phylo_tree,
    verify_phylo_tree_on, BinaryCharacterMatrix,
};
use lcs_core::structured::{cover_special_graph, cycle_vertex_cover, tree_vertex_cover};
use proptest::prelude::*;

fn brute_force_min_cover(g: &Graph) -> usize {
    let n = g.order();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (0u32..1 << n)
        .filter(|mask| {
            edges
                .iter()
                .all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1)
        })
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

fn random_tree(n: usize, seed: u64) -> Graph {
    // attach each vertex to a random earlier one
    let mut g = Graph::new(n);
    let mut x = seed;
    for v in 1..n {
        x = lcs_core::rng::mix64(x);
        g.add_edge((x % v as u64) as usize, v).unwrap();
    }
    g
}

const DENSITIES: [f64; 5] = [0.05, 0.1, 0.3, 0.6, 0.9];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn removing_critical_vertices_leaves_trees_and_cycles(
        n in 5usize..=80, di in 0usize..5, seed: u64
    ) {
        let g = gen_random_graph(n, DENSITIES[di], seed);
        let crit: BTreeSet<usize> = critical_vertices(&g).into_iter().collect();
        let rest = remove_vertices(&g, &crit);
        prop_assert!(classify_components(&rest).iter().all(|c| c.kind != ComponentKind::Other));
        prop_assert!(cover_special_graph(&rest).is_ok());
    }

    #[test]
    fn generator_is_deterministic_with_exact_edge_count(n in 1usize..120, d in 0.0f64..=1.0, seed: u64) {
        let a = gen_random_graph(n, d, seed);
        prop_assert_eq!(a.edge_count(), target_edge_count(n, d));
        prop_assert_eq!(a.edge_count() as f64, (d * (n * (n - 1) / 2) as f64).round());
        prop_assert_eq!(a, gen_random_graph(n, d, seed));
    }

    #[test]
    fn compatibility_is_symmetric(
        rows in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 4), 1..7)
    ) {
        let m = BinaryCharacterMatrix::from_rows(&rows).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let (a, b) = (species_set(&m, i).unwrap(), species_set(&m, j).unwrap());
                prop_assert_eq!(compatible(&a, &b), compatible(&b, &a));
            }
        }
        prop_assert_eq!(is_perfect_phylogeny(&m), conflict_graph(&m).edge_count() == 0);
    }
}

#[test]
fn structured_solvers_are_optimal() {
    for seed in 0..200u64 {
        let n = 1 + (seed % 16) as usize;
        let t = random_tree(n, seed);
        let c = tree_vertex_cover(&t).unwrap();
        assert!(is_vertex_cover(&t, &c));
        assert_eq!(c.len(), brute_force_min_cover(&t), "tree seed {seed}");
    }
    for k in 3..=16 {
        let g = Graph::cycle(k);
        assert_eq!(
            cycle_vertex_cover(&g).unwrap().len(),
            brute_force_min_cover(&g)
        );
    }
}

#[test]
fn decoding_never_beats_the_optimum() {
    for seed in 0..60u64 {
        let n = 4 + (seed % 11) as usize;
        let g = gen_random_graph(n, [0.2, 0.35, 0.5][(seed % 3) as usize], seed);
        let dec = Decoder::new(&g);
        let opt = brute_force_min_cover(&g);
        let len = dec.chromosome_len();
        if len == 0 {
            // conditional optimality
            assert_eq!(decode(&g, &Chromosome::zeros(0)).unwrap().len(), opt);
            continue;
        }
        let mut best = usize::MAX;
        for mask in 0..1u64 << len.min(12) {
            let c = Chromosome::from_mask(len, mask);
            let cover = dec.decode(&c).unwrap();
            assert!(is_vertex_cover(&g, &cover));
            assert!(cover.len() >= opt);
            best = best.min(cover.len());
        }
        // some chromosome reaches the optimum
        if len <= 12 {
            assert_eq!(best, opt, "seed {seed}");
        }
    }
}

#[test]
fn ga_stays_between_optimum_and_twice_optimum() {
    for seed in 0..30u64 {
        let n = 5 + (seed % 10) as usize;
        let g = gen_random_graph(n, 0.4, seed);
        let opt = exact_cover(&g).unwrap().len();
        for run in 0..10 {
            let sol = evolve(&g, &GaParams::default().with_seed(run)).unwrap();
            assert!(is_vertex_cover(&g, &sol.cover));
            assert!(sol.cover.len() >= opt);
            assert!(sol.cover.len() <= 2 * opt.max(1));
        }
        assert!(two_approx_cover(&g, seed).len() <= 2 * opt);
    }
}

fn laminar_matrix(species: usize, characters: usize, seed: u64) -> BinaryCharacterMatrix {
    // species sit on nodes of a random rooted tree; each character is the
    // set of species inside one random subtree, so the columns are laminar
    let mut x = seed;
    let mut next = || {
        x = lcs_core::rng::mix64(x);
        x
    };
    let total = species + species.saturating_sub(1);
    let mut parent = vec![usize::MAX; total];
    for v in 1..total {
        parent[v] = (next() % v as u64) as usize;
    }
    let leaf_of: Vec<usize> = (total - species..total).collect();
    let columns: Vec<BTreeSet<usize>> = (0..characters)
        .map(|_| {
            let root = (next() % total as u64) as usize;
            leaf_of
                .iter()
                .enumerate()
                .filter(|&(_, &l)| {
                    let mut cur = l;
                    loop {
                        if cur == root {
                            return true;
                        }
                        if cur == 0 {
                            return false;
                        }
                        cur = parent[cur];
                    }
                })
                .map(|(s, _)| s)
                .collect()
        })
        .collect();
    BinaryCharacterMatrix::from_columns(species, &columns).unwrap()
}

#[test]
fn laminar_matrices_build_valid_trees() {
    for seed in 0..300u64 {
        let m = 1 + (seed % 8) as usize;
        let n = 1 + (seed / 8 % 8) as usize;
        let mtx = laminar_matrix(m, n, seed);
        assert!(is_perfect_phylogeny(&mtx), "seed {seed}");
        let t = build_perfect_phylogeny(&mtx).unwrap();
        assert!(verify_phylo_tree(&mtx, &t), "seed {seed}");
    }
}

#[test]
fn exact_subset_matches_column_enumeration() {
    for seed in 0..100u64 {
        let n = 1 + (seed % 12) as usize;
        let m = 2 + (seed % 5) as usize;
        let mut x = seed;
        let rows: Vec<Vec<bool>> = (0..m)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        x = lcs_core::rng::mix64(x);
                        x % 3 == 0
                    })
                    .collect()
            })
            .collect();
        let mtx = BinaryCharacterMatrix::from_rows(&rows).unwrap();
        let best = (0u32..1 << n)
            .filter(|mask| {
                let cols: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
                is_compatible_subset(&mtx, &cols)
            })
            .map(u32::count_ones)
            .max()
            .unwrap() as usize;
        let r = largest_compatible_subset_named(&mtx, "exact", seed).unwrap();
        assert_eq!(r.kept.len(), best, "seed {seed}");
        assert!(verify_phylo_tree_on(&mtx, &r.kept, &r.tree));
    }
}
