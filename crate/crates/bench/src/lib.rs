//! Fixed benchmark inputs shared by the criterion benches.

use w2pack::bench::{generate_weights, WeightKind};
use w2pack::{generators, WeightedGraph};

/// Random sparse graph with uniform weights, reproducible from `seed`.
pub fn sparse_uniform(n: usize, avg_degree: f64, seed: u64) -> WeightedGraph {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let g = generators::random_sparse(n, avg_degree, &mut rng);
    generate_weights(&g, WeightKind::Uniform, seed, false).expect("generated weights")
}

/// Grid with hybrid weights.
pub fn grid_hybrid(rows: usize, cols: usize) -> WeightedGraph {
    generate_weights(&generators::grid(rows, cols), WeightKind::Hybrid, 0, false)
        .expect("generated weights")
}
