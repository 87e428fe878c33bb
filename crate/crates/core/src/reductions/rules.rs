//! The individual reduction rules. Each `try_*` tests one rule at one pivot
//! and mutates the instance only when it applies.

use crate::graph::{Vertex, Weight};
use crate::link_graph::LinkGraph;
use crate::oracle::{self, OracleBudget};

use super::engine::Reducer;
use super::{EventKind, ReductionEvent, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Applied,
    /// The rule's condition holds but there is nothing to remove.
    NoChange,
    NotApplicable,
}

impl Outcome {
    pub fn applied(self) -> bool {
        self == Outcome::Applied
    }
}

fn contains(sorted: &[Vertex], v: Vertex) -> bool {
    sorted.binary_search(&v).is_ok()
}

/// `a \ b` for sorted lists.
fn difference(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter().copied().filter(|&x| !contains(b, x)).collect()
}

fn intersection(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter().copied().filter(|&x| contains(b, x)).collect()
}

fn closed(mut open: Vec<Vertex>, v: Vertex) -> Vec<Vertex> {
    if let Err(pos) = open.binary_search(&v) {
        open.insert(pos, v);
    }
    open
}

/// Exact `α_w²` over `ids` using the link-graph's own conflict test.
fn alpha_of(lg: &LinkGraph, ids: &[Vertex]) -> Weight {
    let weights: Vec<Weight> = ids.iter().map(|&v| lg.weight(v)).collect();
    let mut conflicts = vec![0u64; ids.len()];
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            if lg.conflict(ids[i], ids[j]) {
                conflicts[i] |= 1 << j;
                conflicts[j] |= 1 << i;
            }
        }
    }
    oracle::max_weight_packing(&weights, &conflicts).0
}

/// Whether no pair in `set` conflicts.
fn is_packing(lg: &LinkGraph, set: &[Vertex]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &x)| set[i + 1..].iter().all(|&y| !lg.conflict(x, y)))
}

impl Reducer {
    fn alive(&self, v: Vertex) -> bool {
        self.ri.graph.is_alive(v)
    }

    fn w(&self, v: Vertex) -> Weight {
        self.ri.graph.weight(v)
    }

    fn push_event(
        &mut self,
        rule: Rule,
        pivot: Vertex,
        kind: EventKind,
        removed: Vec<Vertex>,
        added_links: Vec<(Vertex, Vertex)>,
        offset: Weight,
    ) {
        self.ri.offset += offset;
        self.ri.stats.applications[rule.index()] += 1;
        self.ri.stack.push(ReductionEvent {
            rule,
            pivot,
            kind,
            removed,
            added_links,
            offset,
        });
    }

    /// Puts `v` into the solution: removes `N₂[v] ∪ extra`, offset `w(v)`.
    pub(crate) fn include(&mut self, rule: Rule, v: Vertex, extra: &[Vertex]) -> Outcome {
        let g = &self.ri.graph;
        let mut removed = closed(g.two_neighborhood_fresh(v), v);
        removed.extend(extra.iter().copied().filter(|&x| g.is_alive(x)));
        removed.sort_unstable();
        removed.dedup();
        let wv = self.w(v);
        let links = self
            .ri
            .graph
            .remove_preserving(&removed)
            .expect("included neighborhood is alive");
        self.push_event(rule, v, EventKind::Include, removed, links, wv);
        Outcome::Applied
    }

    pub(crate) fn exclude(&mut self, rule: Rule, pivot: Vertex, mut set: Vec<Vertex>) -> Outcome {
        set.sort_unstable();
        set.dedup();
        if set.is_empty() {
            return Outcome::NoChange;
        }
        let links = self
            .ri
            .graph
            .remove_preserving(&set)
            .expect("excluded vertices are alive");
        self.push_event(rule, pivot, EventKind::Exclude, set, links, 0);
        Outcome::Applied
    }

    /// Removes `excluded ∪ {v}` and subtracts `w(v)` from `survivors`.
    fn transfer(
        &mut self,
        rule: Rule,
        v: Vertex,
        mut excluded: Vec<Vertex>,
        survivors: Vec<Vertex>,
    ) -> Outcome {
        let wv = self.w(v);
        excluded.push(v);
        excluded.sort_unstable();
        excluded.dedup();
        let links = self
            .ri
            .graph
            .remove_preserving(&excluded)
            .expect("transfer set is alive");
        for &s in &survivors {
            let ws = self.w(s);
            self.ri
                .graph
                .set_weight(s, ws - wv)
                .expect("survivor is alive");
        }
        self.push_event(
            rule,
            v,
            EventKind::WeightTransfer { survivors },
            excluded,
            links,
            wv,
        );
        Outcome::Applied
    }

    /// Heuristic exclusion used by the peeling heuristic.
    pub(crate) fn peel_exclude(&mut self, v: Vertex) {
        let conflicts = self.ri.graph.two_neighborhood_fresh(v);
        let links = self
            .ri
            .graph
            .remove_preserving(&[v])
            .expect("peeled vertex is alive");
        self.push_event(
            Rule::PeelExclude,
            v,
            EventKind::PeelExclude { conflicts },
            vec![v],
            links,
            0,
        );
    }

    fn in_two_neighborhood(&mut self, v: Vertex, u: Vertex) -> Option<Vec<Vertex>> {
        if u == v || !self.alive(v) || !self.alive(u) {
            return None;
        }
        let n2v = self.ri.graph.two_neighborhood(v);
        contains(&n2v, u).then_some(n2v)
    }

    /// Heavy Vertex condition `w(v) ≥ α_w²(𝒢[N₂(v)])`, evaluated exactly.
    /// `None` if `N₂(v)` exceeds the oracle budget.
    pub fn heavy_vertex_condition(&mut self, v: Vertex) -> Option<bool> {
        if !self.alive(v) {
            return Some(false);
        }
        let n2 = self.ri.graph.two_neighborhood(v);
        if n2.len() > OracleBudget::default().max_vertices {
            return None;
        }
        Some(self.w(v) >= alpha_of(&self.ri.graph, &n2))
    }

    pub fn try_heavy_vertex(&mut self, v: Vertex) -> Outcome {
        match self.heavy_vertex_condition(v) {
            Some(true) => self.include(Rule::HeavyVertex, v, &[]),
            _ => Outcome::NotApplicable,
        }
    }

    /// Neighbor Removal.
    pub fn try_neighbor_removal(&mut self, v: Vertex, u: Vertex) -> Outcome {
        match self.in_two_neighborhood(v, u) {
            Some(n2v) => self.neighbor_removal_in(v, u, &n2v),
            None => Outcome::NotApplicable,
        }
    }

    /// `N₂[u]` when `w(u) + w_max(N₂(v) \ N₂[u]) ≤ w(v)`. Every bound used by
    /// the neighbor removal rules is at least that maximum.
    fn partner_closure(&mut self, v: Vertex, u: Vertex, n2v: &[Vertex]) -> Option<Vec<Vertex>> {
        let (wv, wu) = (self.w(v), self.w(u));
        if wu > wv {
            return None;
        }
        let n2u = closed(self.ri.graph.two_neighborhood(u), u);
        let g = &self.ri.graph;
        let heavy = n2v
            .iter()
            .any(|&x| g.weight(x) > wv - wu && !contains(&n2u, x));
        (!heavy).then_some(n2u)
    }

    fn neighbor_removal_in(&mut self, v: Vertex, u: Vertex, n2v: &[Vertex]) -> Outcome {
        let Some(n2u) = self.partner_closure(v, u, n2v) else {
            return Outcome::NotApplicable;
        };
        // N₂(v) \ N₂[u]; for u ∈ N(v) this is L(v) \ N₂[u].
        let rest = difference(n2v, &n2u);
        let bound = if rest.len() <= self.opts.alpha_cap {
            alpha_of(&self.ri.graph, &rest)
        } else {
            self.split_bound(v, u, n2v, &n2u)
        };
        if bound + self.w(u) <= self.w(v) {
            self.exclude(Rule::NeighborRemoval, v, vec![u])
        } else {
            Outcome::NotApplicable
        }
    }

    fn split_bound(&mut self, v: Vertex, u: Vertex, n2v: &[Vertex], n2u: &[Vertex]) -> Weight {
        let g = &mut self.ri.graph;
        let lv = g.links_of(v);
        let l_rest = g.weight_of(&difference(&lv, n2u));
        if g.has_edge(u, v) {
            l_rest
        } else {
            let all_rest = g.weight_of(&difference(n2v, n2u));
            all_rest.min(g.nbr_wmax(v) + l_rest)
        }
    }

    /// Neighborhood Removal.
    pub fn try_neighborhood_removal(&mut self, v: Vertex) -> Outcome {
        if !self.alive(v) {
            return Outcome::NotApplicable;
        }
        let lv = self.ri.graph.links_of(v);
        let g = &self.ri.graph;
        if g.weight(v) >= g.weight_of(&lv) + g.nbr_wmax(v) {
            self.include(Rule::NeighborhoodRemoval, v, &[])
        } else {
            Outcome::NotApplicable
        }
    }

    /// Split Neighbor Removal with the cheap neighbor-weight shortcut tried
    /// first for adjacent pairs.
    pub fn try_split_neighbor_removal(&mut self, v: Vertex, u: Vertex) -> Outcome {
        match self.in_two_neighborhood(v, u) {
            Some(n2v) => self.split_neighbor_removal_in(v, u, &n2v),
            None => Outcome::NotApplicable,
        }
    }

    fn split_neighbor_removal_in(&mut self, v: Vertex, u: Vertex, n2v: &[Vertex]) -> Outcome {
        if self.ri.graph.has_edge(u, v) {
            let lv = self.ri.graph.links_of(v);
            let g = &self.ri.graph;
            if g.nbr_weight(u) >= g.weight_of(&lv) + g.nbr_weight(v) {
                return self.exclude(Rule::SplitNeighborRemoval, v, vec![u]);
            }
        }
        let Some(n2u) = self.partner_closure(v, u, n2v) else {
            return Outcome::NotApplicable;
        };
        let bound = self.split_bound(v, u, n2v, &n2u);
        if bound + self.w(u) <= self.w(v) {
            self.exclude(Rule::SplitNeighborRemoval, v, vec![u])
        } else {
            Outcome::NotApplicable
        }
    }

    fn common_conflicts(&mut self, v: Vertex, u: Vertex, n2v: &[Vertex]) -> Vec<Vertex> {
        let n2u = self.ri.graph.two_neighborhood(u);
        intersection(n2v, &n2u)
            .into_iter()
            .filter(|&x| x != u && x != v)
            .collect()
    }

    /// Intersection Removal.
    pub fn try_intersection_removal(&mut self, v: Vertex, u: Vertex) -> Outcome {
        match self.in_two_neighborhood(v, u) {
            Some(n2v) => self.intersection_removal_in(v, u, &n2v),
            None => Outcome::NotApplicable,
        }
    }

    fn intersection_removal_in(&mut self, v: Vertex, u: Vertex, n2v: &[Vertex]) -> Outcome {
        let g = &self.ri.graph;
        if g.weight(v) < g.weight_of(n2v) - g.weight(u) {
            return Outcome::NotApplicable;
        }
        let k = self.common_conflicts(v, u, n2v);
        self.exclude(Rule::IntersectionRemoval, v, k)
    }

    /// Split Intersection Removal.
    pub fn try_split_intersection_removal(&mut self, v: Vertex, u: Vertex) -> Outcome {
        match self.in_two_neighborhood(v, u) {
            Some(n2v) => self.split_intersection_removal_in(v, u, &n2v),
            None => Outcome::NotApplicable,
        }
    }

    fn split_intersection_removal_in(&mut self, v: Vertex, u: Vertex, n2v: &[Vertex]) -> Outcome {
        let lv = self.ri.graph.links_of(v);
        let g = &self.ri.graph;
        let wl = g.weight_of(&lv);
        let holds = if g.has_edge(u, v) {
            let wmax_others = g
                .neighbors(v)
                .iter()
                .filter(|&&x| x != u)
                .map(|&x| g.weight(x))
                .max()
                .unwrap_or(0);
            g.weight(v) >= wl + wmax_others
        } else {
            g.weight(v) >= wl - g.weight(u) + g.nbr_wmax(v)
        };
        if !holds {
            return Outcome::NotApplicable;
        }
        let k = self.common_conflicts(v, u, n2v);
        self.exclude(Rule::SplitIntersectionRemoval, v, k)
    }

    /// Domination for an adjacent pair with `N[u] = N₂[v]`.
    pub fn try_domination(&mut self, v: Vertex, u: Vertex) -> Outcome {
        if u == v || !self.alive(v) || !self.alive(u) || !self.ri.graph.has_edge(u, v) {
            return Outcome::NotApplicable;
        }
        let g = &self.ri.graph;
        if !g
            .neighbors(v)
            .iter()
            .all(|&a| a == u || g.has_edge(u, a))
        {
            return Outcome::NotApplicable;
        }
        let deg_l = self.ri.graph.links_of(v).len();
        let g = &self.ri.graph;
        if deg_l + g.deg(v) != g.deg(u) {
            return Outcome::NotApplicable;
        }
        let wv = g.weight(v);
        if wv >= g.weight(u).max(g.nbr_wmax(u)) {
            return self.include(Rule::Domination, v, &[]);
        }
        if wv >= g.nbr_weight(u) - wv {
            let k: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|&x| x != v).collect();
            if !k.is_empty() {
                return self.exclude(Rule::Domination, v, k);
            }
        }
        if wv >= g.weight(u) {
            return self.exclude(Rule::Domination, v, vec![u]);
        }
        Outcome::NotApplicable
    }

    pub fn is_d2_simplicial(&mut self, v: Vertex) -> bool {
        if !self.alive(v) {
            return false;
        }
        let lv = self.ri.graph.links_of(v);
        let g = &self.ri.graph;
        // Pairs inside N(v) conflict through v; only pairs touching L(v) need checks.
        lv.iter().enumerate().all(|(i, &x)| {
            g.neighbors(v).iter().all(|&y| g.conflict(x, y))
                && lv[i + 1..].iter().all(|&y| g.conflict(x, y))
        })
    }

    /// Weighted Clique.
    pub fn try_weighted_clique(&mut self, v: Vertex) -> Outcome {
        if !self.alive(v) {
            return Outcome::NotApplicable;
        }
        let n2 = self.ri.graph.two_neighborhood(v);
        if self.ri.graph.wmax_of(&n2) > self.w(v) || !self.is_d2_simplicial(v) {
            return Outcome::NotApplicable;
        }
        self.include(Rule::WeightedClique, v, &[])
    }

    /// D2-Simplicial Weight Transfer.
    pub fn try_weight_transfer(&mut self, v: Vertex) -> Outcome {
        if !self.alive(v) || !self.is_d2_simplicial(v) {
            return Outcome::NotApplicable;
        }
        let n2 = self.ri.graph.two_neighborhood(v);
        let wv = self.w(v);
        let heavier: Vec<Vertex> = n2.iter().copied().filter(|&u| self.w(u) > wv).collect();
        for u in heavier.iter().copied() {
            if self.is_d2_simplicial(u) {
                return Outcome::NotApplicable;
            }
        }
        let excluded = difference(&n2, &heavier);
        self.transfer(Rule::WeightTransfer, v, excluded, heavier)
    }

    /// Neighborhood Folding.
    pub fn try_neighborhood_folding(&mut self, v: Vertex) -> Outcome {
        if !self.alive(v) || self.ri.graph.deg(v) > 1 {
            return Outcome::NotApplicable;
        }
        let n2 = self.ri.graph.two_neighborhood(v);
        if n2.is_empty() {
            return Outcome::NotApplicable;
        }
        let g = &self.ri.graph;
        let total = g.weight_of(&n2);
        let wmin = n2.iter().map(|&x| g.weight(x)).min().unwrap_or(0);
        let wv = g.weight(v);
        if !(total > wv && wv >= total - wmin) || !is_packing(g, &n2) {
            return Outcome::NotApplicable;
        }
        let closed_v = closed(n2.clone(), v);
        // Everything conflicting with some member of N₂(v), outside N₂[v].
        let mut outside = Vec::new();
        for &z in &n2 {
            outside.extend(difference(&g.two_neighborhood_fresh(z), &closed_v));
        }
        outside.sort_unstable();
        outside.dedup();

        let mut links = self
            .ri
            .graph
            .remove_preserving(&closed_v)
            .expect("folded vertices are alive");
        let nv = self.ri.graph.add_vertex(total - wv);
        for t in outside {
            if self.ri.graph.add_link(nv, t).expect("link target is alive") {
                links.push((nv.min(t), nv.max(t)));
            }
        }
        self.push_event(
            Rule::NeighborhoodFolding,
            v,
            EventKind::NeighborhoodFold {
                folded: n2,
                new_vertex: nv,
            },
            closed_v,
            links,
            wv,
        );
        Outcome::Applied
    }

    /// `x == c` or `x` adjacent to `c` in the input graph.
    fn in_closed_g(&self, c: Vertex, x: Vertex) -> bool {
        let g = &self.ri.graph;
        x == c || (g.is_original(x) && g.base().has_edge(c, x))
    }

    /// Whether every conflict of `v` lies in `N_G[u]`, given `deg(v) ≤ 1`.
    pub(crate) fn degree1_qualifies(&self, v: Vertex, u: Vertex) -> bool {
        let g = &self.ri.graph;
        if !g.is_alive(v) || !g.is_original(v) || v == u || g.deg(v) > 1 {
            return false;
        }
        if !g.base().has_edge(u, v) {
            return false;
        }
        for &a in g.neighbors(v) {
            if !self.in_closed_g(u, a) {
                return false;
            }
            if !g.neighbors(a).iter().all(|&b| b == v || self.in_closed_g(u, b)) {
                return false;
            }
        }
        g.link_partners(v).iter().all(|&t| self.in_closed_g(u, t))
    }

    /// Fast Degree-1 around the input-graph vertex `u`.
    pub fn try_fast_degree1(&mut self, u: Vertex) -> Outcome {
        let g = &self.ri.graph;
        if !g.is_original(u) {
            return Outcome::NotApplicable;
        }
        let base = g.base_shared();
        let best = base
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&x| self.degree1_qualifies(x, u))
            .max_by(|&a, &b| g.weight(a).cmp(&g.weight(b)).then(b.cmp(&a)));
        let Some(v) = best else {
            return Outcome::NotApplicable;
        };
        let wv = g.weight(v);
        let clique = std::iter::once(u)
            .chain(base.neighbors(u).iter().copied())
            .filter(|&x| g.is_alive(x) && x != v);
        let (excluded, mut survivors): (Vec<Vertex>, Vec<Vertex>) =
            clique.partition(|&x| g.weight(x) <= wv);
        survivors.sort_unstable();
        self.transfer(Rule::FastDegree1, v, excluded, survivors)
    }

    fn degree2_qualifies(&self, x: Vertex, u: Vertex, y: Vertex) -> bool {
        let g = &self.ri.graph;
        if !g.is_alive(x) || !g.is_original(x) || x == u || x == y || g.deg(x) > 2 {
            return false;
        }
        if !g.neighbors(x).iter().all(|&a| a == u || a == y) {
            return false;
        }
        g.link_partners(x)
            .iter()
            .all(|&t| self.in_closed_g(u, t) || self.in_closed_g(y, t))
    }

    /// Fast Degree-2 for the input-graph pair `u, y`.
    pub fn try_fast_degree2(&mut self, u: Vertex, y: Vertex) -> Outcome {
        let g = &self.ri.graph;
        if u == y || !g.is_original(u) || !g.is_original(y) {
            return Outcome::NotApplicable;
        }
        let base = g.base_shared();
        let mut q: Vec<Vertex> = intersection(base.neighbors(u), base.neighbors(y))
            .into_iter()
            .filter(|&x| self.degree2_qualifies(x, u, y))
            .collect();
        let Some(&v) = q
            .iter()
            .max_by(|&&a, &&b| g.weight(a).cmp(&g.weight(b)).then(b.cmp(&a)))
        else {
            return Outcome::NotApplicable;
        };
        q.retain(|&x| x != v);
        let twins = q;

        let live_w = |x: Vertex| if g.is_alive(x) { g.weight(x) } else { 0 };
        let side_max = |c: Vertex, other: Vertex| {
            base.neighbors(c)
                .iter()
                .copied()
                .filter(|&x| x != other && x != v && !contains(&twins, x))
                .map(live_w)
                .max()
                .unwrap_or(0)
        };
        let (cu, cy) = (side_max(u, y), side_max(y, u));
        let (wu, wy) = (live_w(u), live_w(y));
        let bound = if base.has_edge(u, y) {
            wu.max(wy).max(cu + cy)
        } else {
            (wu + cy).max(wy + cu).max(cu + cy)
        };
        if g.weight(v) >= bound {
            self.include(Rule::FastDegree2, v, &twins)
        } else if twins.is_empty() {
            Outcome::NotApplicable
        } else {
            self.exclude(Rule::FastDegree2, v, twins)
        }
    }

    /// Fast Neighborhood Removal using the precomputed input-graph bound.
    pub fn try_fast_neighborhood_removal(&mut self, v: Vertex) -> Outcome {
        let g = &self.ri.graph;
        if !g.is_alive(v) || !g.is_original(v) {
            return Outcome::NotApplicable;
        }
        if !g.link_partners(v).iter().all(|&t| g.is_original(t)) {
            return Outcome::NotApplicable;
        }
        let bound = self.fast_bound(v);
        let g = &self.ri.graph;
        if g.weight(v) >= g.nbr_wmax(v).saturating_add(bound) {
            self.include(Rule::FastNeighborhoodRemoval, v, &[])
        } else {
            Outcome::NotApplicable
        }
    }

    /// `Σ_{u ∈ N_G(v)} (w_G(N_G(u)) − w_G(v))`, computed once for all vertices.
    fn fast_bound(&mut self, v: Vertex) -> Weight {
        if self.bound13.is_none() {
            let base = self.ri.graph.base_shared();
            let nbr_sum: Vec<Weight> = (0..base.n())
                .map(|u| base.weight_of(base.neighbors(u)))
                .collect();
            let table = (0..base.n())
                .map(|v| {
                    base.neighbors(v)
                        .iter()
                        .map(|&u| nbr_sum[u] - base.weight(v))
                        .fold(0u64, Weight::saturating_add)
                })
                .collect();
            self.bound13 = Some(table);
        }
        self.bound13.as_ref().unwrap()[v]
    }

    /// Tests `rule` at pivot `v`, trying every eligible partner for pair rules.
    pub fn apply_at(&mut self, rule: Rule, v: Vertex) -> Outcome {
        if !self.alive(v) {
            return Outcome::NotApplicable;
        }
        match rule {
            Rule::HeavyVertex => self.try_heavy_vertex(v),
            Rule::NeighborhoodRemoval => self.try_neighborhood_removal(v),
            Rule::WeightedClique => self.try_weighted_clique(v),
            Rule::WeightTransfer => self.try_weight_transfer(v),
            Rule::NeighborhoodFolding => self.try_neighborhood_folding(v),
            Rule::FastNeighborhoodRemoval => self.try_fast_neighborhood_removal(v),
            Rule::FastDegree1 => self.fast_degree1_at(v),
            Rule::FastDegree2 => self.fast_degree2_at(v),
            Rule::Domination => {
                let partners = self.ri.graph.neighbors(v).to_vec();
                for u in partners {
                    let out = self.try_domination(v, u);
                    if out.applied() {
                        return out;
                    }
                }
                Outcome::NotApplicable
            }
            Rule::NeighborRemoval
            | Rule::SplitNeighborRemoval
            | Rule::IntersectionRemoval
            | Rule::SplitIntersectionRemoval => {
                // Failed tests do not mutate the graph, so N₂(v) stays valid
                // until a rule applies.
                let n2v = self.ri.graph.two_neighborhood(v);
                for &u in &n2v {
                    if !self.alive(u) {
                        continue;
                    }
                    let out = match rule {
                        Rule::NeighborRemoval => self.neighbor_removal_in(v, u, &n2v),
                        Rule::SplitNeighborRemoval => self.split_neighbor_removal_in(v, u, &n2v),
                        Rule::IntersectionRemoval => self.intersection_removal_in(v, u, &n2v),
                        _ => self.split_intersection_removal_in(v, u, &n2v),
                    };
                    if out.applied() {
                        return out;
                    }
                }
                Outcome::NotApplicable
            }
            Rule::PeelInclude | Rule::PeelExclude => Outcome::NotApplicable,
        }
    }

    /// Fast Degree-1 with `v` as the candidate low-degree vertex.
    pub(crate) fn fast_degree1_at(&mut self, v: Vertex) -> Outcome {
        let g = &self.ri.graph;
        if !g.is_alive(v) || !g.is_original(v) || g.deg(v) > 1 {
            return Outcome::NotApplicable;
        }
        let base = g.base_shared();
        for &u in base.neighbors(v) {
            if self.degree1_qualifies(v, u) {
                return self.try_fast_degree1(u);
            }
        }
        Outcome::NotApplicable
    }

    /// Fast Degree-2 with `v` as the candidate; the pair is `N_G(v)` when `v`
    /// has two input neighbors, otherwise its two current neighbors.
    pub(crate) fn fast_degree2_at(&mut self, v: Vertex) -> Outcome {
        let g = &self.ri.graph;
        if !g.is_alive(v) || !g.is_original(v) || g.deg(v) > 2 {
            return Outcome::NotApplicable;
        }
        let pair = if g.base().degree(v) == 2 {
            let nb = g.base().neighbors(v);
            (nb[0], nb[1])
        } else if g.deg(v) == 2 {
            (g.neighbors(v)[0], g.neighbors(v)[1])
        } else {
            return Outcome::NotApplicable;
        };
        self.try_fast_degree2(pair.0, pair.1)
    }
}
