//! Reduce-and-peel heuristic: exhaustive exact reduction alternating with one
//! heuristic inclusion or exclusion until the instance is empty.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Vertex, WeightedGraph};
use crate::link_graph::LinkGraph;
use crate::reductions::{
    restore, restore_onto, EngineOptions, ReducedInstance, Reducer, ReductionConfig, Rule,
};
use crate::solution::Solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rating {
    /// `w(v) - w(L(v)) - w(N(v))`.
    WeightDiff,
    /// `w(v)`.
    Weight,
    /// `-deg(v) - deg_L(v)`.
    Degree,
}

impl Rating {
    pub const ALL: [Rating; 3] = [Rating::WeightDiff, Rating::Weight, Rating::Degree];
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeelMode {
    /// Pick uniformly among the `k` best-rated live vertices.
    Adaptive { k: usize },
    /// Rank once, perturb the remaining ranking with probability `p` before
    /// each step, take the head.
    NonAdaptive { p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeelAction {
    /// Exclude a lowest-rated vertex.
    Exclude,
    /// Include a highest-rated vertex.
    Include,
}

#[derive(Debug, Error, PartialEq)]
pub enum PeelError {
    #[error("adaptive candidate count must be at least 1")]
    ZeroK,
    #[error("perturbation probability {0} outside [0.5, 1]")]
    BadProbability(f64),
    #[error("the degree rating only supports exclusion")]
    IncludeWithDegree,
}

/// Entries of the non-adaptive ranking swapped per perturbation.
const PERTURB_WINDOW: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct PeelConfig {
    pub rating: Rating,
    pub mode: PeelMode,
    pub action: PeelAction,
    pub seed: u64,
    pub reduction: ReductionConfig,
}

impl PeelConfig {
    pub fn new(
        rating: Rating,
        mode: PeelMode,
        action: PeelAction,
        seed: u64,
    ) -> Result<Self, PeelError> {
        match mode {
            PeelMode::Adaptive { k: 0 } => return Err(PeelError::ZeroK),
            PeelMode::NonAdaptive { p } if !(0.5..=1.0).contains(&p) => {
                return Err(PeelError::BadProbability(p))
            }
            _ => {}
        }
        if rating == Rating::Degree && action == PeelAction::Include {
            return Err(PeelError::IncludeWithDegree);
        }
        Ok(PeelConfig {
            rating,
            mode,
            action,
            seed,
            reduction: ReductionConfig::core(),
        })
    }

    pub fn with_reduction(mut self, reduction: ReductionConfig) -> Self {
        self.reduction = reduction;
        self
    }
}

impl Default for PeelConfig {
    fn default() -> Self {
        PeelConfig::new(
            Rating::WeightDiff,
            PeelMode::Adaptive { k: 4 },
            PeelAction::Exclude,
            0,
        )
        .expect("valid default")
    }
}

/// Rating of live vertex `v`; materializes `L(v)` when needed.
pub fn rating(lg: &mut LinkGraph, v: Vertex, which: Rating) -> i128 {
    match which {
        Rating::Weight => lg.weight(v) as i128,
        Rating::WeightDiff => {
            let lv = lg.links_of(v);
            lg.weight(v) as i128 - lg.weight_of(&lv) as i128 - lg.nbr_weight(v) as i128
        }
        Rating::Degree => {
            let dl = lg.links_of(v).len();
            -((lg.deg(v) + dl) as i128)
        }
    }
}

/// Priority of a vertex: larger is peeled first.
fn key(lg: &mut LinkGraph, v: Vertex, cfg: &PeelConfig) -> i128 {
    let r = rating(lg, v, cfg.rating);
    match cfg.action {
        PeelAction::Exclude => -r,
        PeelAction::Include => r,
    }
}

/// Chooses the next vertex to peel.
enum Selector {
    Adaptive {
        k: usize,
        heap: BinaryHeap<(i128, Reverse<Vertex>, u32)>,
        version: Vec<u32>,
    },
    NonAdaptive {
        p: f64,
        ranking: Vec<Vertex>,
        pos: usize,
        ranked: Vec<bool>,
    },
}

impl Selector {
    fn new(r: &mut Reducer, cfg: &PeelConfig) -> Self {
        let live: Vec<Vertex> = r.graph().live_vertices().collect();
        let lg = r.graph_mut();
        match cfg.mode {
            PeelMode::Adaptive { k } => {
                let mut sel = Selector::Adaptive {
                    k,
                    heap: BinaryHeap::with_capacity(live.len()),
                    version: Vec::new(),
                };
                sel.update(lg, cfg, &live);
                sel
            }
            PeelMode::NonAdaptive { p } => {
                let mut keyed: Vec<(i128, Vertex)> =
                    live.iter().map(|&v| (key(lg, v, cfg), v)).collect();
                keyed.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
                let mut ranked = vec![false; lg.capacity()];
                for &(_, v) in &keyed {
                    ranked[v] = true;
                }
                Selector::NonAdaptive {
                    p,
                    ranking: keyed.into_iter().map(|(_, v)| v).collect(),
                    pos: 0,
                    ranked,
                }
            }
        }
    }

    /// Re-rates `changed` vertices (adaptive) or appends unranked new ones.
    fn update(&mut self, lg: &mut LinkGraph, cfg: &PeelConfig, changed: &[Vertex]) {
        match self {
            Selector::Adaptive { heap, version, .. } => {
                if version.len() < lg.capacity() {
                    version.resize(lg.capacity(), 0);
                }
                for &v in changed {
                    if lg.is_alive(v) {
                        version[v] += 1;
                        heap.push((key(lg, v, cfg), Reverse(v), version[v]));
                    }
                }
            }
            Selector::NonAdaptive {
                ranking, ranked, ..
            } => {
                if ranked.len() < lg.capacity() {
                    ranked.resize(lg.capacity(), false);
                }
                let unseen: Vec<Vertex> = changed
                    .iter()
                    .copied()
                    .filter(|&v| lg.is_alive(v) && !ranked[v])
                    .collect();
                let mut fresh: Vec<(i128, Vertex)> =
                    unseen.into_iter().map(|v| (key(lg, v, cfg), v)).collect();
                fresh.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
                for (_, v) in fresh {
                    ranked[v] = true;
                    ranking.push(v);
                }
            }
        }
    }

    fn pick<R: Rng>(&mut self, lg: &LinkGraph, rng: &mut R) -> Option<Vertex> {
        match self {
            Selector::Adaptive { k, heap, version } => {
                let mut top = Vec::with_capacity(*k);
                while top.len() < *k {
                    let Some(entry) = heap.pop() else { break };
                    let v = entry.1 .0;
                    if lg.is_alive(v) && version[v] == entry.2 {
                        top.push(entry);
                    }
                }
                if top.is_empty() {
                    return None;
                }
                let chosen = rng.gen_range(0..top.len());
                let v = top[chosen].1 .0;
                for (i, e) in top.into_iter().enumerate() {
                    if i != chosen {
                        heap.push(e);
                    }
                }
                Some(v)
            }
            Selector::NonAdaptive {
                p, ranking, pos, ..
            } => {
                let skip_dead = |pos: &mut usize, ranking: &[Vertex]| {
                    while *pos < ranking.len() && !lg.is_alive(ranking[*pos]) {
                        *pos += 1;
                    }
                };
                skip_dead(pos, ranking);
                if *pos >= ranking.len() {
                    return None;
                }
                if rng.gen_bool(*p) {
                    let span = (ranking.len() - *pos).min(PERTURB_WINDOW);
                    let j = *pos + rng.gen_range(0..span);
                    ranking.swap(*pos, j);
                    skip_dead(pos, ranking);
                }
                let v = ranking[*pos];
                *pos += 1;
                Some(v)
            }
        }
    }
}

/// Reduces and peels `lg` until it is empty; the returned instance holds the
/// full stack of exact and heuristic decisions.
pub fn peel_to_empty(lg: LinkGraph, cfg: &PeelConfig) -> ReducedInstance {
    let mut r = Reducer::new(
        lg,
        EngineOptions {
            seed: cfg.seed,
            // A full re-scan after every peel step would make peeling quadratic.
            final_sweep: false,
            requeue_partners: false,
            ..EngineOptions::default()
        },
    );
    r.record_changes();
    r.run(&cfg.reduction);
    r.take_changed();
    let mut sel = Selector::new(&mut r, cfg);
    let mut pick_rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(
        cfg.seed ^ 0x9e37_79b9_7f4a_7c15,
    );
    while !r.graph().is_empty() {
        let v = match sel.pick(r.graph(), &mut pick_rng) {
            Some(v) => v,
            None => {
                // Vertices the selector has not seen yet.
                let rest: Vec<Vertex> = r.graph().live_vertices().collect();
                sel.update(r.graph_mut(), cfg, &rest);
                sel.pick(r.graph(), &mut pick_rng)
                    .expect("a live vertex is always selectable")
            }
        };
        match cfg.action {
            PeelAction::Exclude => r.peel_exclude(v),
            PeelAction::Include => {
                r.include(Rule::PeelInclude, v, &[]);
            }
        }
        r.run(&cfg.reduction);
        let changed = r.take_changed();
        sel.update(r.graph_mut(), cfg, &changed);
    }
    r.into_instance()
}

/// Heuristic maximal 2-packing set of `g`.
pub fn red_w2pack(g: &WeightedGraph, cfg: &PeelConfig) -> Solution {
    let ri = peel_to_empty(LinkGraph::from_graph(g.clone()), cfg);
    restore(&ri, &[]).expect("empty solution is feasible")
}

/// Heuristic maximal 2-packing set of the link-graph `k`, in its vertex ids.
pub fn red_w2pack_on(k: &LinkGraph, cfg: &PeelConfig) -> Solution {
    let ri = peel_to_empty(k.clone(), cfg);
    restore_onto(k, &ri.stack, &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::oracle::{brute_mw2ps, is_2packing, OracleBudget};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_configs(seed: u64) -> Vec<PeelConfig> {
        let mut out = Vec::new();
        for rating in Rating::ALL {
            for mode in [PeelMode::Adaptive { k: 1 }, PeelMode::Adaptive { k: 4 }, PeelMode::NonAdaptive { p: 0.75 }] {
                for action in [PeelAction::Exclude, PeelAction::Include] {
                    if let Ok(c) = PeelConfig::new(rating, mode, action, seed) {
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    fn is_maximal(g: &WeightedGraph, s: &Solution) -> bool {
        (0..g.n()).all(|v| s.contains(v) || !is_2packing(g, &[s.vertices(), &[v]].concat()))
    }

    #[test]
    fn rating_examples() {
        let mut iso = LinkGraph::from_graph(WeightedGraph::empty(1, vec![7]).unwrap());
        assert_eq!(rating(&mut iso, 0, Rating::WeightDiff), 7);
        assert_eq!(rating(&mut iso, 0, Rating::Weight), 7);
        assert_eq!(rating(&mut iso, 0, Rating::Degree), 0);
        let mut p3 = LinkGraph::from_graph(generators::path(3));
        assert_eq!(rating(&mut p3, 1, Rating::WeightDiff), -1);
        let mut p4 = LinkGraph::from_graph(generators::path(4));
        assert_eq!(rating(&mut p4, 0, Rating::Degree), -2);
    }

    #[test]
    fn config_validation() {
        let a = PeelMode::Adaptive { k: 2 };
        assert_eq!(
            PeelConfig::new(Rating::Degree, a, PeelAction::Include, 0),
            Err(PeelError::IncludeWithDegree)
        );
        assert_eq!(
            PeelConfig::new(Rating::Weight, PeelMode::Adaptive { k: 0 }, PeelAction::Exclude, 0),
            Err(PeelError::ZeroK)
        );
        assert_eq!(
            PeelConfig::new(Rating::Weight, PeelMode::NonAdaptive { p: 0.2 }, PeelAction::Exclude, 0),
            Err(PeelError::BadProbability(0.2))
        );
    }

    #[test]
    fn small_examples() {
        let empty = WeightedGraph::empty(0, vec![]).unwrap();
        assert!(red_w2pack(&empty, &PeelConfig::default()).is_empty());
        let single = WeightedGraph::empty(1, vec![4]).unwrap();
        let star = generators::star(3);
        let c9 = generators::cycle(9);
        let p7 = generators::path(7);
        for cfg in all_configs(3) {
            let no_reduce = cfg.clone().with_reduction(ReductionConfig::custom(vec![]));
            assert_eq!(red_w2pack(&single, &no_reduce).vertices(), &[0]);
            assert_eq!(red_w2pack(&star, &cfg).weight(), 1);
            for g in [&c9, &p7] {
                let s = red_w2pack(g, &cfg);
                assert!(is_2packing(g, s.vertices()));
                assert!(s.weight() <= 3);
                assert!(is_maximal(g, &s));
            }
        }
    }

    #[test]
    fn unreduced_peeling_is_feasible_and_maximal() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for seed in 0..8 {
            let g = generators::random_sparse(120, 3.0, &mut rng);
            let g = generators::with_random_weights(&g, 1, 40, &mut rng);
            for cfg in all_configs(seed) {
                for cfg in [cfg.clone(), cfg.with_reduction(ReductionConfig::custom(vec![]))] {
                    let s = red_w2pack(&g, &cfg);
                    assert!(is_2packing(&g, s.vertices()));
                    assert!(is_maximal(&g, &s));
                }
            }
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = generators::random_sparse(300, 3.0, &mut rng);
        let g = generators::with_random_weights(&g, 1, 40, &mut rng);
        for cfg in all_configs(17) {
            assert_eq!(red_w2pack(&g, &cfg), red_w2pack(&g, &cfg));
        }
    }

    #[test]
    fn adaptive_k1_takes_the_extreme_vertex() {
        // Unreduced path with weights chosen so that vertex 2 has the lowest weight.
        let g = generators::path(5).with_weights(vec![5, 6, 1, 6, 5]).unwrap();
        let cfg = PeelConfig::new(Rating::Weight, PeelMode::Adaptive { k: 1 }, PeelAction::Exclude, 0)
            .unwrap()
            .with_reduction(ReductionConfig::custom(vec![]));
        let ri = peel_to_empty(LinkGraph::from_graph(g), &cfg);
        assert_eq!(ri.stack[0].pivot, 2);
        assert_eq!(ri.stack[0].rule, Rule::PeelExclude);
    }

    #[test]
    fn fully_reduced_runs_are_optimal() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rand::Rng::gen_range(&mut rng, 1..=14);
            let g = generators::gnp(n, 0.2, &mut rng);
            let g = generators::with_random_weights(&g, 1, 20, &mut rng);
            let lg = LinkGraph::from_graph(g.clone());
            let ri = peel_to_empty(lg.clone(), &PeelConfig::default());
            if ri.stack.iter().all(|e| e.rule.number().is_some()) {
                let opt = brute_mw2ps(&lg, OracleBudget::default()).unwrap().0;
                assert_eq!(red_w2pack(&g, &PeelConfig::default()).weight(), opt);
            }
        }
    }
}
