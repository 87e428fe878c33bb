//! Brute-force reference solvers and feasibility checks for small instances.
//!
//! Conflicts are derived directly from the definition (adjacent, linked, or a
//! live common neighbor) and never go through the square-graph construction.

use thiserror::Error;

use crate::graph::{Vertex, Weight, WeightedGraph};
use crate::link_graph::LinkGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
}

impl OracleBudget {
    /// Cap used when a reduction rule asks the oracle for an exact subterm.
    pub const IN_REDUCTION: OracleBudget = OracleBudget { max_vertices: 12 };

    pub fn new(max_vertices: usize) -> Self {
        assert!(
            (1..=64).contains(&max_vertices),
            "oracle budget must be in 1..=64"
        );
        OracleBudget { max_vertices }
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 16 }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {n} vertices, oracle budget is {cap}")]
    BudgetExceeded { n: usize, cap: usize },
}

/// True iff no two members of `s` are adjacent or share a neighbor in `g`.
pub fn is_2packing(g: &WeightedGraph, s: &[Vertex]) -> bool {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, &v) in s.iter().enumerate() {
        if v >= g.n() || owner[v] != usize::MAX {
            return false;
        }
        owner[v] = i;
    }
    // Each vertex may be in N[x] of at most one member x.
    let mut covered = vec![usize::MAX; g.n()];
    for (i, &x) in s.iter().enumerate() {
        for &y in std::iter::once(&x).chain(g.neighbors(x)) {
            if covered[y] != usize::MAX && covered[y] != i {
                return false;
            }
            covered[y] = i;
        }
    }
    true
}

/// Whether live vertices `u != v` conflict in `lg`, by definition.
pub fn conflict_by_definition(lg: &LinkGraph, u: Vertex, v: Vertex) -> bool {
    if lg.has_edge(u, v) || lg.has_link(u, v) {
        return true;
    }
    lg.live_vertices()
        .any(|c| c != u && c != v && lg.has_edge(c, u) && lg.has_edge(c, v))
}

/// Exact maximum weight set with no two members in conflict. `conflicts[i]` is
/// a bitmask over local indices. Returns (weight, member mask).
pub(crate) fn max_weight_packing(weights: &[Weight], conflicts: &[u64]) -> (Weight, u64) {
    let n = weights.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    // Relabel so bit i is the i-th heaviest vertex.
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let w: Vec<Weight> = order.iter().map(|&v| weights[v]).collect();
    let adj: Vec<u64> = order
        .iter()
        .map(|&v| {
            let mut m = 0u64;
            let mut c = conflicts[v];
            while c != 0 {
                let j = c.trailing_zeros() as usize;
                m |= 1 << pos[j];
                c &= c - 1;
            }
            m
        })
        .collect();

    struct Search<'a> {
        w: &'a [Weight],
        adj: &'a [u64],
        best: Weight,
        best_set: u64,
    }
    impl Search<'_> {
        fn go(&mut self, cand: u64, cur: Weight, set: u64) {
            if cur > self.best {
                self.best = cur;
                self.best_set = set;
            }
            if cand == 0 {
                return;
            }
            let mut bound = cur;
            let mut c = cand;
            while c != 0 {
                bound += self.w[c.trailing_zeros() as usize];
                c &= c - 1;
            }
            if bound <= self.best {
                return;
            }
            let i = cand.trailing_zeros() as usize;
            let bit = 1u64 << i;
            self.go(cand & !bit & !self.adj[i], cur + self.w[i], set | bit);
            self.go(cand & !bit, cur, set);
        }
    }

    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s = Search {
        w: &w,
        adj: &adj,
        best: 0,
        best_set: 0,
    };
    s.go(full, 0, 0);
    let mut mask = 0u64;
    let mut c = s.best_set;
    while c != 0 {
        mask |= 1 << order[c.trailing_zeros() as usize];
        c &= c - 1;
    }
    (s.best, mask)
}

fn unmask(ids: &[Vertex], mask: u64) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = ids
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &v)| v)
        .collect();
    out.sort_unstable();
    out
}

/// Exact `α_w²` of the set `ids` with conflicts taken from the whole of `lg`
/// (common neighbors outside `ids` still count).
pub fn alpha2_of_set(
    lg: &LinkGraph,
    ids: &[Vertex],
    budget: OracleBudget,
) -> Result<(Weight, Vec<Vertex>), OracleError> {
    if ids.len() > budget.max_vertices {
        return Err(OracleError::BudgetExceeded {
            n: ids.len(),
            cap: budget.max_vertices,
        });
    }
    let weights: Vec<Weight> = ids.iter().map(|&v| lg.weight(v)).collect();
    let mut conflicts = vec![0u64; ids.len()];
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            if conflict_by_definition(lg, ids[i], ids[j]) {
                conflicts[i] |= 1 << j;
                conflicts[j] |= 1 << i;
            }
        }
    }
    let (w, mask) = max_weight_packing(&weights, &conflicts);
    Ok((w, unmask(ids, mask)))
}

/// Exact `α_w²(𝒢)` with a witness, by enumeration.
pub fn brute_mw2ps(
    lg: &LinkGraph,
    budget: OracleBudget,
) -> Result<(Weight, Vec<Vertex>), OracleError> {
    let ids: Vec<Vertex> = lg.live_vertices().collect();
    alpha2_of_set(lg, &ids, budget)
}

/// Exact MWIS of `g` with a witness, by enumeration.
pub fn brute_mwis(
    g: &WeightedGraph,
    budget: OracleBudget,
) -> Result<(Weight, Vec<Vertex>), OracleError> {
    let n = g.n();
    if n > budget.max_vertices {
        return Err(OracleError::BudgetExceeded {
            n,
            cap: budget.max_vertices,
        });
    }
    let conflicts: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let (w, mask) = max_weight_packing(g.weights(), &conflicts);
    let ids: Vec<Vertex> = (0..n).collect();
    Ok((w, unmask(&ids, mask)))
}

/// Whether `s` is independent in `g`.
pub fn is_independent(g: &WeightedGraph, s: &[Vertex]) -> bool {
    let mut inside = vec![false; g.n()];
    for &v in s {
        if v >= g.n() || inside[v] {
            return false;
        }
        inside[v] = true;
    }
    s.iter().all(|&v| g.neighbors(v).iter().all(|&u| !inside[u]))
}
