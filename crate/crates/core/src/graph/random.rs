use rand::seq::index;
use rand::SeedableRng;

use super::Graph;
use crate::rng::SeedRng;

/// `round(density * n(n-1)/2)`, after snapping away float noise so that
/// exact halves round up consistently.
pub fn target_edge_count(n: usize, density: f64) -> usize {
    let pairs = n * n.saturating_sub(1) / 2;
    let density = density.clamp(0.0, 1.0);
    let raw = ((density * pairs as f64) * 1e6).round() / 1e6;
    (raw.round() as usize).min(pairs)
}

/// Uniform G(n, m) graph with `m = target_edge_count(n, density)`.
///
/// The same `(n, density, seed)` always yields the same graph.
pub fn gen_random_graph(n: usize, density: f64, seed: u64) -> Graph {
    let pairs = n * n.saturating_sub(1) / 2;
    let m = target_edge_count(n, density);
    let mut rng = SeedRng::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, pairs, m).into_vec();
    picked.sort_unstable();

    let mut g = Graph::new(n);
    // walk the rows of the upper triangle alongside the sorted indices
    let mut row = 0;
    let mut row_start = 0;
    for k in picked {
        while k >= row_start + (n - 1 - row) {
            row_start += n - 1 - row;
            row += 1;
        }
        let v = row + 1 + (k - row_start);
        g.add_edge(row, v).expect("sampled pairs are distinct");
    }
    g
}
