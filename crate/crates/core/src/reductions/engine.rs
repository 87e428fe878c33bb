//! Exhaustive rule application with per-rule work queues.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Vertex, Weight};
use crate::link_graph::LinkGraph;

use super::{ReducedInstance, ReductionConfig, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    /// Seed for the candidate order.
    pub seed: u64,
    /// Re-test every rule at every vertex once the queues run dry, so the
    /// result is a true fixpoint even where dependency tracking is partial.
    pub final_sweep: bool,
    /// Largest set for which Neighbor Removal evaluates `α_w²` exactly.
    pub alpha_cap: usize,
    /// Also requeue the neighbors and link partners of every vertex whose
    /// 2-neighborhood changed, since pair rules look at their partners'
    /// 2-neighborhoods.
    pub requeue_partners: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            seed: 0,
            final_sweep: true,
            alpha_cap: 12,
            requeue_partners: true,
        }
    }
}

/// A reduced instance together with the state needed to keep reducing it.
#[derive(Debug, Clone)]
pub struct Reducer {
    pub(crate) ri: ReducedInstance,
    pub(crate) opts: EngineOptions,
    pub(crate) bound13: Option<Vec<Weight>>,
    rng: ChaCha8Rng,
    started: bool,
    next_seeds: Vec<Vertex>,
    seen: Vec<u32>,
    stamp: u32,
    changed: Option<Vec<Vertex>>,
    /// Per-rule queue membership; all false between runs.
    queued: Vec<Vec<bool>>,
}

impl Reducer {
    pub fn new(graph: LinkGraph, opts: EngineOptions) -> Self {
        Self::from_instance(ReducedInstance::new(graph), opts)
    }

    pub fn from_instance(mut ri: ReducedInstance, opts: EngineOptions) -> Self {
        ri.graph.set_track_touched(true);
        Reducer {
            ri,
            opts,
            bound13: None,
            rng: ChaCha8Rng::seed_from_u64(opts.seed),
            started: false,
            next_seeds: Vec::new(),
            seen: Vec::new(),
            stamp: 0,
            changed: None,
            queued: Vec::new(),
        }
    }

    pub fn graph(&self) -> &LinkGraph {
        &self.ri.graph
    }

    pub fn instance(&self) -> &ReducedInstance {
        &self.ri
    }

    pub fn into_instance(mut self) -> ReducedInstance {
        self.ri.graph.set_track_touched(false);
        self.ri
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub(crate) fn graph_mut(&mut self) -> &mut LinkGraph {
        &mut self.ri.graph
    }

    /// Starts recording the vertices whose neighborhood, links or weight may
    /// have changed; see [`Reducer::take_changed`].
    pub fn record_changes(&mut self) {
        self.changed.get_or_insert_with(Vec::new);
    }

    /// Live vertices affected by mutations since the previous call, sorted and
    /// deduplicated. Empty unless [`Reducer::record_changes`] was called.
    pub fn take_changed(&mut self) -> Vec<Vertex> {
        self.drain_dirty();
        let Some(c) = self.changed.as_mut() else {
            return Vec::new();
        };
        let mut out = std::mem::take(c);
        out.sort_unstable();
        out.dedup();
        out.retain(|&v| self.ri.graph.is_alive(v));
        out
    }

    /// Touched vertices plus their neighbors and link partners, deduplicated.
    /// Also queued as seeds for the next outer iteration.
    fn drain_dirty(&mut self) -> Vec<Vertex> {
        let touched = self.ri.graph.take_touched();
        let g = &self.ri.graph;
        let cap = g.capacity();
        if self.seen.len() < cap {
            self.seen.resize(cap, 0);
        }
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        let mut out = Vec::new();
        for x in touched {
            if !g.is_alive(x) {
                continue;
            }
            let partners: (&[Vertex], &[Vertex]) = if self.opts.requeue_partners {
                (g.neighbors(x), g.link_partners(x))
            } else {
                (&[], &[])
            };
            for &y in std::iter::once(&x).chain(partners.0).chain(partners.1) {
                if self.seen[y] != self.stamp {
                    self.seen[y] = self.stamp;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        self.next_seeds.extend_from_slice(&out);
        if let Some(c) = self.changed.as_mut() {
            c.extend_from_slice(&out);
        }
        out
    }

    fn shuffled(&mut self, mut vs: Vec<Vertex>) -> Vec<Vertex> {
        vs.sort_unstable();
        vs.dedup();
        vs.shuffle(&mut self.rng);
        vs
    }

    /// Applies the rules of `config` until none applies anywhere. The first
    /// call considers every vertex; later calls start from vertices touched
    /// since the previous call. Returns whether anything changed.
    pub fn run(&mut self, config: &ReductionConfig) -> bool {
        let order = &config.order;
        if order.is_empty() {
            return false;
        }
        self.drain_dirty();
        let mut seeds: Vec<Vertex> = if self.started {
            std::mem::take(&mut self.next_seeds)
        } else {
            self.next_seeds.clear();
            self.ri.graph.live_vertices().collect()
        };
        self.started = true;
        let core: Vec<Rule> = order.iter().copied().filter(|r| !r.is_fast()).collect();
        let mut any = false;
        loop {
            let mut changed = false;
            for &rule in order.iter().filter(|r| r.is_fast()) {
                changed |= self.fast_pass(rule, &seeds);
            }
            if !core.is_empty() {
                let fast_dirty = std::mem::take(&mut self.next_seeds);
                let mut core_seeds = seeds.clone();
                core_seeds.extend_from_slice(&fast_dirty);
                self.next_seeds = fast_dirty;
                changed |= self.core_queues(&core, core_seeds);
            }
            if !changed && self.opts.final_sweep {
                changed = self.sweep(order);
            }
            any |= changed;
            if !changed {
                break;
            }
            seeds = std::mem::take(&mut self.next_seeds);
        }
        self.next_seeds.clear();
        any
    }

    fn fast_pass(&mut self, rule: Rule, seeds: &[Vertex]) -> bool {
        let g = &self.ri.graph;
        let cands: Vec<Vertex> = seeds
            .iter()
            .copied()
            .filter(|&v| g.is_alive(v) && g.is_original(v))
            .collect();
        let mut cands = self.shuffled(cands);
        let mut changed = false;
        match rule {
            Rule::FastDegree1 => {
                // Rounds over low-degree vertices; a vertex failing the subset
                // test is revisited only once its neighborhood changes.
                loop {
                    let mut next = Vec::new();
                    for v in cands {
                        if self.fast_degree1_at(v).applied() {
                            changed = true;
                            next.extend(self.drain_dirty());
                        }
                    }
                    let g = &self.ri.graph;
                    next.retain(|&v| g.is_alive(v) && g.is_original(v) && g.deg(v) <= 1);
                    if next.is_empty() {
                        break;
                    }
                    cands = self.shuffled(next);
                }
            }
            Rule::FastDegree2 => {
                for v in cands {
                    if self.fast_degree2_at(v).applied() {
                        changed = true;
                        self.drain_dirty();
                    }
                }
            }
            Rule::FastNeighborhoodRemoval => {
                for v in cands {
                    if self.try_fast_neighborhood_removal(v).applied() {
                        changed = true;
                        self.drain_dirty();
                    }
                }
            }
            _ => unreachable!("not a fast rule"),
        }
        changed
    }

    fn core_queues(&mut self, rules: &[Rule], seeds: Vec<Vertex>) -> bool {
        let seeds = self.shuffled(seeds);
        let mut queues: Vec<VecDeque<Vertex>> = Vec::with_capacity(rules.len());
        let mut queued = std::mem::take(&mut self.queued);
        queued.resize_with(rules.len(), Vec::new);
        let cap = self.ri.graph.capacity();
        for flags in queued.iter_mut() {
            if flags.len() < cap {
                flags.resize(cap, false);
            }
            let mut q = VecDeque::with_capacity(seeds.len());
            for &v in &seeds {
                if self.ri.graph.is_alive(v) && !flags[v] {
                    flags[v] = true;
                    q.push_back(v);
                }
            }
            queues.push(q);
        }
        let mut changed = false;
        while let Some(r) = queues.iter().position(|q| !q.is_empty()) {
            let v = queues[r].pop_front().unwrap();
            queued[r][v] = false;
            if !self.ri.graph.is_alive(v) || !self.apply_at(rules[r], v).applied() {
                continue;
            }
            changed = true;
            let dirty = self.drain_dirty();
            let cap = self.ri.graph.capacity();
            for (q, flags) in queues.iter_mut().zip(queued.iter_mut()) {
                if flags.len() < cap {
                    flags.resize(cap, false);
                }
                for &x in &dirty {
                    if !flags[x] {
                        flags[x] = true;
                        q.push_back(x);
                    }
                }
            }
        }
        self.queued = queued;
        changed
    }

    /// One pass of every rule over every live vertex; stops at the first
    /// application.
    fn sweep(&mut self, order: &[Rule]) -> bool {
        for &rule in order {
            let all: Vec<Vertex> = self.ri.graph.live_vertices().collect();
            let all = self.shuffled(all);
            for v in all {
                let applied = if rule.is_fast() {
                    self.fast_pass(rule, &[v])
                } else {
                    self.apply_at(rule, v).applied()
                };
                if applied {
                    self.drain_dirty();
                    return true;
                }
            }
        }
        false
    }
}

/// Reduces `lg` exhaustively with the rules of `config`.
pub fn reduce_exhaustively(lg: LinkGraph, config: &ReductionConfig, seed: u64) -> ReducedInstance {
    let mut r = Reducer::new(
        lg,
        EngineOptions {
            seed,
            ..EngineOptions::default()
        },
    );
    r.run(config);
    r.into_instance()
}
