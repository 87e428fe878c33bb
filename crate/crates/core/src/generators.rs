//! Small graph families and random graphs for tests, benchmarks and the CLI.

use rand::Rng;

use crate::graph::{Vertex, Weight, WeightedGraph};

fn build(n: usize, edges: &[(Vertex, Vertex)]) -> WeightedGraph {
    WeightedGraph::from_edges(n, edges, vec![1; n]).expect("generated edges are valid")
}

pub fn path(n: usize) -> WeightedGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &edges)
}

pub fn cycle(n: usize) -> WeightedGraph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((n - 1, 0));
    build(n, &edges)
}

/// `K_{1,leaves}` with the center at vertex 0.
pub fn star(leaves: usize) -> WeightedGraph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    build(leaves + 1, &edges)
}

pub fn grid(rows: usize, cols: usize) -> WeightedGraph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    build(rows * cols, &edges)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build(n, &edges)
}

/// Random sparse graph with about `n * avg_degree / 2` distinct edges.
pub fn random_sparse<R: Rng + ?Sized>(n: usize, avg_degree: f64, rng: &mut R) -> WeightedGraph {
    if n < 2 {
        return build(n, &[]);
    }
    let target = ((n as f64 * avg_degree) / 2.0).round() as usize;
    let max_edges = n * (n - 1) / 2;
    let target = target.min(max_edges);
    let mut seen = std::collections::HashSet::with_capacity(target);
    let mut edges = Vec::with_capacity(target);
    while edges.len() < target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && seen.insert((u.min(v), u.max(v))) {
            edges.push((u.min(v), u.max(v)));
        }
    }
    build(n, &edges)
}

/// Same topology with i.i.d. weights drawn from `lo..=hi`.
pub fn with_random_weights<R: Rng + ?Sized>(
    g: &WeightedGraph,
    lo: Weight,
    hi: Weight,
    rng: &mut R,
) -> WeightedGraph {
    let w = (0..g.n()).map(|_| rng.gen_range(lo..=hi)).collect();
    g.with_weights(w).expect("one weight per vertex")
}

/// Eight vertices `v a b c x y p q` with weights `10 5 2 2 2 2 3 4`. `v` is
/// adjacent to `a`, `b` and `c`, which form the path `a b c`; `c` is adjacent
/// to `x` and `y`, and `x` to `p` and `q`.
pub fn heavy_center_example() -> WeightedGraph {
    WeightedGraph::from_edges(
        8,
        &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 4), (3, 5), (4, 6), (4, 7)],
        vec![10, 5, 2, 2, 2, 2, 3, 4],
    )
    .expect("valid example")
}

/// Fifty named benchmark instances: paths, cycles, unit-weight stars, grids
/// and random sparse graphs up to 5000 vertices, with unit or uniform weights.
pub fn mini_corpus(seed: u64) -> Vec<(String, WeightedGraph)> {
    use crate::bench::weights::{generate_weights, WeightKind};
    use rand::SeedableRng;

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut topo: Vec<(String, WeightedGraph)> = Vec::new();
    for n in [10, 50, 200, 1000, 5000] {
        topo.push((format!("path-{n}"), path(n)));
    }
    for n in [9, 31, 100, 500, 2000] {
        topo.push((format!("cycle-{n}"), cycle(n)));
    }
    for (r, c) in [(3, 3), (4, 5), (5, 5), (8, 8), (10, 10), (20, 20), (30, 30), (50, 50)] {
        topo.push((format!("grid-{r}x{c}"), grid(r, c)));
    }
    for n in [20, 50, 100, 200, 500, 1000, 2000, 5000] {
        for d in [2, 3, 5] {
            topo.push((format!("sparse-{n}-d{d}"), random_sparse(n, d as f64, &mut rng)));
        }
    }
    let mut out = Vec::with_capacity(50);
    for leaves in [1, 2, 3, 5, 10, 50, 200, 1000] {
        out.push((format!("star-{leaves}-unit"), star(leaves)));
    }
    for (i, (name, g)) in topo.into_iter().enumerate() {
        let kind = if i % 2 == 0 { WeightKind::Unit } else { WeightKind::Uniform };
        let g = generate_weights(&g, kind, seed ^ i as u64, false).expect("generated kinds");
        out.push((format!("{name}-{kind}"), g));
    }
    out
}
