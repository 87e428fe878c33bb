//! Square-graph construction and the reduce-and-transform pipeline that turns
//! a 2-packing instance into an independent set instance.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Vertex, Weight, WeightedGraph};
use crate::link_graph::LinkGraph;
use crate::mem;
use crate::reductions::{
    reduce_exhaustively, restore, ConfigName, ReducedInstance, ReductionConfig, ReductionError,
};
use crate::solution::Solution;

/// The square of a reduced link-graph, with compact vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MwisInstance {
    pub graph: WeightedGraph,
    /// `vertex_map[i]` is the link-graph vertex behind instance vertex `i`.
    pub vertex_map: Vec<Vertex>,
}

impl MwisInstance {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    /// Instance id of link-graph vertex `v`, if it survived.
    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.vertex_map.binary_search(&v).ok()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("solution is not independent in the transformed instance")]
    NotIndependent,
    #[error("solution vertex {0} is out of range")]
    OutOfRange(Vertex),
    #[error(transparent)]
    Restore(#[from] ReductionError),
}

/// Collects the closed 2-neighborhood of every live vertex into an adjacency
/// list over compact ids.
fn square_adjacency(lg: &LinkGraph, map: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut index = vec![usize::MAX; lg.capacity()];
    for (i, &v) in map.iter().enumerate() {
        index[v] = i;
    }
    let mut mark = vec![usize::MAX; map.len()];
    let mut adj = Vec::with_capacity(map.len());
    for (i, &v) in map.iter().enumerate() {
        mark[i] = i;
        let mut list = Vec::new();
        let mut push = |x: Vertex, list: &mut Vec<Vertex>| {
            let j = index[x];
            if mark[j] != i {
                mark[j] = i;
                list.push(j);
            }
        };
        for &u in lg.neighbors(v) {
            push(u, &mut list);
            for &x in lg.neighbors(u) {
                push(x, &mut list);
            }
        }
        for &x in lg.link_partners(v) {
            push(x, &mut list);
        }
        list.sort_unstable();
        adj.push(list);
    }
    adj
}

/// `G²` of the live part of `lg`: two vertices are adjacent when they are
/// adjacent, share a neighbor, or are linked.
pub fn square(lg: &LinkGraph) -> MwisInstance {
    let map: Vec<Vertex> = lg.live_vertices().collect();
    let adj = square_adjacency(lg, &map);
    let weights = map.iter().map(|&v| lg.weight(v)).collect();
    let graph = WeightedGraph::from_adjacency(adj, weights).expect("square is symmetric");
    MwisInstance {
        graph,
        vertex_map: map,
    }
}

/// Number of edges of `G²` without building it.
pub fn square_edge_count(g: &WeightedGraph) -> usize {
    let n = g.n();
    let mut mark = vec![usize::MAX; n];
    let mut twice = 0;
    for v in 0..n {
        mark[v] = v;
        for &u in g.neighbors(v) {
            for &x in std::iter::once(&u).chain(g.neighbors(u)) {
                if mark[x] != v {
                    mark[x] = v;
                    twice += 1;
                }
            }
        }
    }
    twice / 2
}

/// Size and timing figures of one reduce-and-transform run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformStats {
    pub config: ConfigName,
    pub n_g2: usize,
    pub m_g2: usize,
    pub n_k2: usize,
    pub m_k2: usize,
    pub offset: Weight,
    pub fully_reduced: bool,
    #[serde(with = "secs")]
    pub reduce_time: Duration,
    #[serde(with = "secs")]
    pub transform_time: Duration,
    /// Peak heap bytes during the run, when the counting allocator is installed.
    pub peak_bytes: Option<usize>,
}

impl TransformStats {
    /// `n(𝒦²) / n(G²)`, or 0 for an empty input.
    pub fn vertex_ratio(&self) -> f64 {
        ratio(self.n_k2, self.n_g2)
    }

    /// `m(𝒦²) / m(G²)`, or 0 for an edgeless square.
    pub fn edge_ratio(&self) -> f64 {
        ratio(self.m_k2, self.m_g2)
    }
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

pub(crate) mod secs {
    use std::time::Duration;

    pub fn serialize<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }
}

/// Reduces `g` with the rules of `config` (none for `transform`) and squares
/// the result.
pub fn reduce_and_transform(
    g: WeightedGraph,
    config: ConfigName,
    seed: u64,
) -> (MwisInstance, ReducedInstance, TransformStats) {
    mem::reset_peak();
    let n_g2 = g.n();
    let m_g2 = square_edge_count(&g);
    let start = Instant::now();
    let lg = LinkGraph::from_graph(g);
    let ri = match config {
        ConfigName::Transform => ReducedInstance::new(lg),
        _ => reduce_exhaustively(lg, &ReductionConfig::named(config), seed),
    };
    let reduce_time = start.elapsed();
    let start = Instant::now();
    let inst = square(&ri.graph);
    let transform_time = start.elapsed();
    let stats = TransformStats {
        config,
        n_g2,
        m_g2,
        n_k2: inst.n(),
        m_k2: inst.m(),
        offset: ri.offset,
        fully_reduced: ri.is_fully_reduced(),
        reduce_time,
        transform_time,
        peak_bytes: mem::peak_bytes(),
    };
    (inst, ri, stats)
}

/// Reduces a link-graph with the rules of `config` and squares the result.
pub fn reduce_and_transform_link(
    lg: LinkGraph,
    config: ConfigName,
    seed: u64,
) -> (MwisInstance, ReducedInstance) {
    let ri = match config {
        ConfigName::Transform => ReducedInstance::new(lg),
        _ => reduce_exhaustively(lg, &ReductionConfig::named(config), seed),
    };
    (square(&ri.graph), ri)
}

/// Maps an independent set of `inst` back to a 2-packing set of the input graph.
pub fn lift(
    inst: &MwisInstance,
    mwis_solution: &[Vertex],
    ri: &ReducedInstance,
) -> Result<Solution, TransformError> {
    if let Some(&bad) = mwis_solution.iter().find(|&&i| i >= inst.n()) {
        return Err(TransformError::OutOfRange(bad));
    }
    if !crate::oracle::is_independent(&inst.graph, mwis_solution) {
        return Err(TransformError::NotIndependent);
    }
    let mapped: Vec<Vertex> = mwis_solution.iter().map(|&i| inst.vertex_map[i]).collect();
    Ok(restore(ri, &mapped)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::oracle::{brute_mw2ps, brute_mwis, OracleBudget};

    fn edges(inst: &MwisInstance) -> Vec<(Vertex, Vertex)> {
        inst.graph.edges().collect()
    }

    #[test]
    fn square_of_p4() {
        let inst = square(&LinkGraph::from_graph(generators::path(4)));
        assert_eq!(edges(&inst), vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        let (w, s) = brute_mwis(&inst.graph, OracleBudget::default()).unwrap();
        assert_eq!(w, 2);
        assert_eq!(s, vec![0, 3]);
    }

    #[test]
    fn square_of_triangle_and_link() {
        let tri = square(&LinkGraph::from_graph(generators::cycle(3)));
        assert_eq!(tri.m(), 3);
        let mut lg = LinkGraph::from_graph(WeightedGraph::empty(2, vec![1, 1]).unwrap());
        lg.add_link(0, 1).unwrap();
        assert_eq!(edges(&square(&lg)), vec![(0, 1)]);
    }

    #[test]
    fn square_skips_dead_vertices() {
        let mut lg = LinkGraph::from_graph(generators::path(5));
        lg.remove_preserving(&[2]).unwrap();
        let inst = square(&lg);
        assert_eq!(inst.vertex_map, vec![0, 1, 3, 4]);
        assert_eq!(edges(&inst), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(inst.index_of(3), Some(2));
        assert_eq!(inst.index_of(2), None);
    }

    #[test]
    fn edge_count_matches_square() {
        let g = generators::grid(4, 5);
        assert_eq!(square_edge_count(&g), square(&LinkGraph::from_graph(g)).m());
    }

    #[test]
    fn star_reduces_fully() {
        let (inst, ri, stats) = reduce_and_transform(generators::star(3), ConfigName::Strong, 0);
        assert_eq!(inst.n(), 0);
        assert_eq!(stats.offset, 1);
        assert!(stats.fully_reduced);
        let s = lift(&inst, &[], &ri).unwrap();
        assert_eq!(s.weight(), 1);
    }

    #[test]
    fn transform_config_is_plain_square() {
        let g = generators::path(4);
        let (inst, ri, stats) = reduce_and_transform(g.clone(), ConfigName::Transform, 0);
        assert_eq!(inst, square(&LinkGraph::from_graph(g)));
        assert_eq!(stats.offset, 0);
        assert!(ri.stack.is_empty());
        let s = lift(&inst, &[0, 3], &ri).unwrap();
        assert_eq!(s.vertices(), &[0, 3]);
        assert_eq!(lift(&inst, &[0, 1], &ri), Err(TransformError::NotIndependent));
        assert_eq!(lift(&inst, &[9], &ri), Err(TransformError::OutOfRange(9)));
    }

    #[test]
    fn lift_of_exact_solution_is_optimal() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for seed in 0..50 {
            let g = generators::gnp(12, 0.2, &mut rng);
            let g = generators::with_random_weights(&g, 1, 20, &mut rng);
            let opt = brute_mw2ps(&LinkGraph::from_graph(g.clone()), OracleBudget::default())
                .unwrap()
                .0;
            for config in ConfigName::ALL {
                let (inst, ri, _) = reduce_and_transform(g.clone(), config, seed);
                let (w, s) = brute_mwis(&inst.graph, OracleBudget::default()).unwrap();
                assert_eq!(w + ri.offset, opt);
                assert_eq!(lift(&inst, &s, &ri).unwrap().weight(), opt);
            }
        }
    }
}
