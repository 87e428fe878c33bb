//! Difference-Core Reduce and Peel: pools diverse reduce-and-peel solutions,
//! solves the sub-instance on which they disagree exactly or by local search,
//! and embeds improvements into the best solution.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{Vertex, Weight, WeightedGraph};
use crate::link_graph::LinkGraph;
use crate::mwis::{self, MwisSolverKind, MwisSolverSpec};
use crate::peel::{red_w2pack_on, PeelAction, PeelConfig, PeelMode, Rating};
use crate::reductions::{
    maximize, reduce_exhaustively, restore, restore_onto, ConfigName, ReductionConfig,
};
use crate::solution::Solution;
use crate::transform::reduce_and_transform_link;

/// Named parameter sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DrpPreset {
    BChils,
    KaMIS,
    NoCore,
}

impl DrpPreset {
    pub const ALL: [DrpPreset; 3] = [DrpPreset::BChils, DrpPreset::KaMIS, DrpPreset::NoCore];

    pub fn name(self) -> &'static str {
        match self {
            DrpPreset::BChils => "DRP-BChils",
            DrpPreset::KaMIS => "DRP-KaMIS",
            DrpPreset::NoCore => "DRP-no-core",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrpParams {
    /// Similarity threshold `φ`: the D-Core is solved once `|U|/n(𝒦) ≤ φ`.
    pub phi: f64,
    pub phi_plus: f64,
    pub phi_minus: f64,
    /// D-Core solve budget `t_H`, scaled by `|D|/n(𝒦)` per solve.
    pub t_h: Duration,
    /// `None` disables the D-Core.
    pub core_solver: Option<MwisSolverKind>,
    pub time_limit: Duration,
    pub seed: u64,
    /// Initial adaptive candidate count.
    pub k0: usize,
    /// Optional cap on the number of reduce-and-peel runs, for reproducible runs.
    pub max_peels: Option<u64>,
    /// Optional cap on local search iterations per D-Core solve.
    pub core_iterations: Option<u64>,
}

impl DrpParams {
    pub fn preset(preset: DrpPreset) -> Self {
        let base = DrpParams {
            phi: 0.6,
            phi_plus: 1.0,
            phi_minus: 1.0,
            t_h: Duration::from_secs(80),
            core_solver: None,
            time_limit: Duration::from_secs(60),
            seed: 0,
            k0: 4,
            max_peels: None,
            core_iterations: None,
        };
        match preset {
            DrpPreset::BChils => DrpParams {
                core_solver: Some(MwisSolverKind::LocalSearch),
                ..base
            },
            DrpPreset::KaMIS => DrpParams {
                phi: 0.8,
                phi_plus: 1.05,
                phi_minus: 0.95,
                core_solver: Some(MwisSolverKind::ExactBB),
                ..base
            },
            DrpPreset::NoCore => base,
        }
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = limit;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Bounds the run by work instead of time, so equal seeds give equal
    /// results whenever the time limit is not reached.
    pub fn with_work_limits(mut self, peels: u64, core_iterations: u64) -> Self {
        self.max_peels = Some(peels);
        self.core_iterations = Some(core_iterations);
        self
    }

    /// `(φ, φ₊, φ₋, t_H)` in seconds.
    pub fn table_row(&self) -> (f64, f64, f64, u64) {
        (self.phi, self.phi_plus, self.phi_minus, self.t_h.as_secs())
    }
}

/// Steps of one diversification cycle.
pub const CYCLE: [(Rating, bool, PeelAction); 10] = [
    (Rating::WeightDiff, true, PeelAction::Exclude),
    (Rating::WeightDiff, false, PeelAction::Exclude),
    (Rating::WeightDiff, true, PeelAction::Include),
    (Rating::WeightDiff, false, PeelAction::Include),
    (Rating::Weight, true, PeelAction::Exclude),
    (Rating::Weight, false, PeelAction::Exclude),
    (Rating::Weight, true, PeelAction::Include),
    (Rating::Weight, false, PeelAction::Include),
    (Rating::Degree, true, PeelAction::Exclude),
    (Rating::Degree, false, PeelAction::Exclude),
];

/// Peel configuration schedule. Adaptive steps use `k₀ + i / 10`; the first
/// non-adaptive use of a step has `p = 0.75`, later uses draw `p` from `[0.5, 1]`.
#[derive(Debug, Clone)]
pub struct Schedule {
    k0: usize,
    rng: ChaCha8Rng,
    seed: u64,
}

impl Schedule {
    pub fn new(k0: usize, seed: u64) -> Self {
        assert!(k0 >= 1, "k0 must be at least 1");
        Schedule {
            k0,
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }

    pub fn next_config(&mut self, i: u64) -> PeelConfig {
        let (rating, adaptive, action) = CYCLE[(i % CYCLE.len() as u64) as usize];
        let round = i / CYCLE.len() as u64;
        let mode = if adaptive {
            PeelMode::Adaptive {
                k: self.k0 + round as usize,
            }
        } else if round == 0 {
            PeelMode::NonAdaptive { p: 0.75 }
        } else {
            PeelMode::NonAdaptive {
                p: self.rng.gen_range(0.5..=1.0),
            }
        };
        let seed = self.seed.wrapping_mul(0x9e37_79b9).wrapping_add(i);
        PeelConfig::new(rating, mode, action, seed).expect("schedule yields valid configs")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub seconds: f64,
    pub weight: Weight,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DrpResult {
    pub solution: Solution,
    /// Best weight on the input graph over time; non-decreasing.
    pub trace: Vec<TracePoint>,
    /// Heaviest reduce-and-peel solution generated, on the input graph.
    pub best_peel_weight: Weight,
    pub peels: u64,
    pub core_solves: u64,
    /// `φ` after each D-Core solve.
    pub phi_history: Vec<f64>,
    pub kernel_size: usize,
    pub time_to_best: f64,
}

/// Vertices of the D-Core: live vertices outside `similar` that do not
/// conflict with a vertex of `best` inside `similar`.
pub fn dcore_vertices(k: &LinkGraph, similar: &[bool], best: &[Vertex]) -> Vec<Vertex> {
    let mut blocked = vec![false; k.capacity()];
    for &s in best.iter().filter(|&&s| similar[s]) {
        blocked[s] = true;
        for x in k.two_neighborhood_fresh(s) {
            blocked[x] = true;
        }
    }
    k.live_vertices()
        .filter(|&v| !similar[v] && !blocked[v])
        .collect()
}

/// Link-subgraph on `keep`, with conflicts among kept vertices preserved.
pub fn build_dcore(k: &LinkGraph, keep: &[Vertex]) -> LinkGraph {
    let mut inside = vec![false; k.capacity()];
    for &v in keep {
        inside[v] = true;
    }
    let drop: Vec<Vertex> = k.live_vertices().filter(|&v| !inside[v]).collect();
    let mut core = k.clone();
    core.remove_preserving(&drop).expect("dropped vertices are alive");
    core
}

/// `(best \ D) ∪ s_core` when `s_core` is strictly heavier than `best ∩ D`,
/// maximized on `k`; `None` when there is no strict improvement.
pub fn embed(k: &LinkGraph, best: &Solution, in_d: &[bool], s_core: &Solution) -> Option<Solution> {
    let old: Weight = best.vertices().iter().filter(|&&v| in_d[v]).map(|&v| k.weight(v)).sum();
    if s_core.weight() <= old {
        return None;
    }
    let mut inside = vec![false; k.capacity()];
    for &v in best.vertices().iter().filter(|&&v| !in_d[v]) {
        inside[v] = true;
    }
    for &v in s_core.vertices() {
        inside[v] = true;
    }
    maximize(k, &mut inside);
    let vs: Vec<Vertex> = (0..inside.len()).filter(|&v| inside[v]).collect();
    assert!(k.is_2packing(&vs), "embedded solution must stay feasible");
    Some(Solution::from_vertices(vs, |v| k.weight(v)))
}

fn symmetric_difference_into(similar: &mut [bool], a: &Solution, b: &Solution) {
    for &v in a.vertices() {
        if !b.contains(v) {
            similar[v] = false;
        }
    }
    for &v in b.vertices() {
        if !a.contains(v) {
            similar[v] = false;
        }
    }
}

struct Run {
    clock: Instant,
    limit: Duration,
    offset: Weight,
    trace: Vec<TracePoint>,
}

impl Run {
    fn expired(&self) -> bool {
        self.clock.elapsed() >= self.limit
    }

    fn record(&mut self, k_weight: Weight) {
        let weight = self.offset + k_weight;
        if self.trace.last().map_or(true, |p| weight > p.weight) {
            self.trace.push(TracePoint {
                seconds: self.clock.elapsed().as_secs_f64(),
                weight,
            });
        }
    }
}

/// Runs DRP on `g`.
pub fn drp(g: &WeightedGraph, params: &DrpParams) -> DrpResult {
    let clock = Instant::now();
    let ri = reduce_exhaustively(LinkGraph::from_graph(g.clone()), &ReductionConfig::strong(), params.seed);
    let mut run = Run {
        clock,
        limit: params.time_limit,
        offset: ri.offset,
        trace: Vec::new(),
    };
    let k = &ri.graph;
    let n_k = k.n_alive();
    if n_k == 0 {
        let solution = restore(&ri, &[]).expect("empty solution is feasible");
        run.record(solution.weight() - ri.offset);
        return DrpResult {
            trace: run.trace,
            best_peel_weight: solution.weight(),
            solution,
            peels: 0,
            core_solves: 0,
            phi_history: Vec::new(),
            kernel_size: 0,
            time_to_best: clock.elapsed().as_secs_f64(),
        };
    }

    let mut schedule = Schedule::new(params.k0, params.seed);
    let mut i = 0u64;
    let mut best = red_w2pack_on(k, &schedule.next_config(i));
    i += 1;
    let mut best_peel = best.weight();
    run.record(best.weight());
    let all_similar = |k: &LinkGraph| {
        let mut u = vec![false; k.capacity()];
        for v in k.live_vertices() {
            u[v] = true;
        }
        u
    };
    let mut similar = all_similar(k);
    let mut n_similar = n_k;
    let mut phi = params.phi;
    let mut phi_history = Vec::new();
    let mut core_solves = 0u64;
    let out_of_peels = |i: u64| params.max_peels.is_some_and(|cap| i >= cap);

    'outer: while !run.expired() && !out_of_peels(i) {
        while n_similar as f64 / n_k as f64 > phi {
            if run.expired() || out_of_peels(i) {
                break 'outer;
            }
            let s = red_w2pack_on(k, &schedule.next_config(i));
            i += 1;
            best_peel = best_peel.max(s.weight());
            if s.weight() > best.weight() {
                best = s;
                run.record(best.weight());
                similar = all_similar(k);
            } else {
                symmetric_difference_into(&mut similar, &best, &s);
            }
            n_similar = k.live_vertices().filter(|&v| similar[v]).count();
        }
        let Some(kind) = params.core_solver else {
            similar = all_similar(k);
            n_similar = n_k;
            continue;
        };

        let mut in_d = vec![false; k.capacity()];
        for v in k.live_vertices().filter(|&v| !similar[v]) {
            in_d[v] = true;
        }
        let d_size = n_k - n_similar;
        let keep = dcore_vertices(k, &similar, best.vertices());
        let core = build_dcore(k, &keep);
        let (inst, core_ri) = reduce_and_transform_link(core.clone(), ConfigName::Strong, params.seed ^ i);
        let remaining = params.time_limit.saturating_sub(clock.elapsed());
        let budget = params.t_h.mul_f64(d_size as f64 / n_k as f64).min(remaining);
        let mut spec =
            MwisSolverSpec::new(kind, budget.max(Duration::from_millis(1)), params.seed ^ i);
        spec.max_iterations = params.core_iterations;
        let result = mwis::solve(&inst.graph, &spec);
        core_solves += 1;
        let mapped: Vec<Vertex> = result
            .solution
            .vertices()
            .iter()
            .map(|&x| inst.vertex_map[x])
            .collect();
        let s_core = restore_onto(&core, &core_ri.stack, &mapped);
        let s_core = Solution::from_vertices(
            s_core.into_vertices().into_iter().filter(|&v| k.is_alive(v)).collect(),
            |v| k.weight(v),
        );
        match embed(k, &best, &in_d, &s_core) {
            Some(improved) => {
                best = improved;
                run.record(best.weight());
                if params.phi_plus * phi < 1.0 {
                    phi *= params.phi_plus;
                } else if result.proven_optimal {
                    phi = params.phi_minus * n_similar as f64 / n_k as f64;
                }
            }
            None => {
                similar = all_similar(k);
                n_similar = n_k;
                if params.phi_plus * phi < 1.0 {
                    phi *= params.phi_plus;
                }
            }
        }
        phi_history.push(phi);
    }

    let solution = restore(&ri, best.vertices()).expect("best solution is feasible on the kernel");
    let time_to_best = run.trace.last().map_or(0.0, |p| p.seconds);
    run.record(solution.weight() - ri.offset);
    DrpResult {
        solution,
        trace: run.trace,
        best_peel_weight: ri.offset + best_peel,
        peels: i,
        core_solves,
        phi_history,
        kernel_size: n_k,
        time_to_best,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::oracle::is_2packing;

    fn sol(k: &LinkGraph, vs: Vec<Vertex>) -> Solution {
        Solution::from_vertices(vs, |v| k.weight(v))
    }

    #[test]
    fn presets() {
        let b = DrpParams::preset(DrpPreset::BChils);
        assert_eq!(b.table_row(), (0.6, 1.0, 1.0, 80));
        assert_eq!(b.core_solver, Some(MwisSolverKind::LocalSearch));
        let k = DrpParams::preset(DrpPreset::KaMIS);
        assert_eq!(k.table_row(), (0.8, 1.05, 0.95, 80));
        assert_eq!(k.core_solver, Some(MwisSolverKind::ExactBB));
        assert_eq!(DrpParams::preset(DrpPreset::NoCore).core_solver, None);
    }

    #[test]
    fn schedule() {
        let mut s = Schedule::new(4, 1);
        let c0 = s.next_config(0);
        assert_eq!(
            (c0.rating, c0.mode, c0.action),
            (Rating::WeightDiff, PeelMode::Adaptive { k: 4 }, PeelAction::Exclude)
        );
        assert_eq!(s.next_config(1).mode, PeelMode::NonAdaptive { p: 0.75 });
        for i in 0..40 {
            let a = s.next_config(i);
            let b = s.next_config(i + 10);
            assert_eq!((a.rating, a.action), (b.rating, b.action));
            match (a.mode, b.mode) {
                (PeelMode::Adaptive { k: x }, PeelMode::Adaptive { k: y }) => assert_eq!(y, x + 1),
                (PeelMode::NonAdaptive { .. }, PeelMode::NonAdaptive { p }) => {
                    assert!((0.5..=1.0).contains(&p))
                }
                _ => panic!("mode changed across a cycle"),
            }
            assert!(!(a.rating == Rating::Degree && a.action == PeelAction::Include));
        }
    }

    #[test]
    fn dcore_is_the_disagreement_set() {
        let k = LinkGraph::from_graph(generators::path(8));
        let mut similar = vec![true; 8];
        let s1 = sol(&k, vec![1, 4, 7]);
        let s2 = sol(&k, vec![2, 5]);
        symmetric_difference_into(&mut similar, &s1, &s2);
        let d: Vec<Vertex> = (0..8).filter(|&v| !similar[v]).collect();
        assert_eq!(d, vec![1, 2, 4, 5, 7]);

        let mut same = vec![true; 8];
        symmetric_difference_into(&mut same, &s1, &s1);
        assert!(same.iter().all(|&u| u));
        assert!(dcore_vertices(&k, &same, s1.vertices()).is_empty());
    }

    #[test]
    fn dcore_keeps_conflicts_through_similar_vertices() {
        // 0 - 1 - 2 with 1 similar and not in the best solution.
        let k = LinkGraph::from_graph(generators::path(3));
        let core = build_dcore(&k, &[0, 2]);
        assert!(core.conflict(0, 2));
        assert!(!core.is_alive(1));
    }

    #[test]
    fn embed_requires_strict_improvement() {
        let k = LinkGraph::from_graph(generators::path(7));
        let best = sol(&k, vec![0, 3, 6]);
        let in_d: Vec<bool> = (0..7).map(|v| v >= 3).collect();
        let restricted = sol(&k, vec![3, 6]);
        assert_eq!(embed(&k, &best, &in_d, &restricted), None);
        assert_eq!(embed(&k, &best, &[false; 7], &Solution::empty()), None);

        let heavy = LinkGraph::from_graph(generators::path(7).with_weights(vec![1, 1, 1, 1, 9, 1, 1]).unwrap());
        let best = sol(&heavy, vec![0, 3, 6]);
        let better = embed(&heavy, &best, &in_d, &sol(&heavy, vec![4])).unwrap();
        assert_eq!(better.vertices(), &[0, 4]);
    }

    #[test]
    fn fully_reducible_input_needs_no_peeling() {
        let r = drp(&generators::star(3), &DrpParams::preset(DrpPreset::KaMIS));
        assert_eq!(r.solution.weight(), 1);
        assert_eq!(r.peels, 0);
        assert_eq!(r.kernel_size, 0);
    }

    #[test]
    fn runs_are_feasible_monotone_and_reproducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for seed in 0..6 {
            let g = generators::random_sparse(50, 3.0, &mut rng);
            let g = generators::with_random_weights(&g, 1, 30, &mut rng);
            for preset in DrpPreset::ALL {
                let params = DrpParams::preset(preset)
                    .with_seed(seed)
                    .with_time_limit(Duration::from_secs(30))
                    .with_work_limits(25, 2000);
                let r = drp(&g, &params);
                assert!(is_2packing(&g, r.solution.vertices()));
                assert!(r.solution.weight() >= r.best_peel_weight);
                assert!(r.trace.windows(2).all(|w| w[0].weight < w[1].weight));
                assert_eq!(r.trace.last().unwrap().weight, r.solution.weight());
                assert_eq!(drp(&g, &params).solution, r.solution, "{preset:?}");
            }
        }
    }
}
