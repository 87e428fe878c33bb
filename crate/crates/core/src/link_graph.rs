//! Dynamic link-graph `𝒢 = (G, 𝓛)` used as the mutable reduction instance.
//!
//! Edges and links are kept in separate sorted adjacency arrays. A link `{u, v}`
//! stands for a path of length exactly two whose middle vertex has been removed,
//! so two vertices *conflict* (cannot both be in a 2-packing set) iff they are
//! adjacent, linked, or share a live common neighbor.
//!
//! Per-vertex aggregates (`Σ w(N(v))`, `w_max(N(v))`, `deg_L(v)` once known) are
//! maintained under every mutation. Link neighborhoods `L(v)` are computed only on
//! demand and then cached and kept up to date incrementally.

use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Vertex, Weight, WeightedGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinkGraphError {
    #[error("vertex {0} is not alive")]
    Dead(Vertex),
    #[error("vertex {0} does not exist")]
    OutOfRange(Vertex),
    #[error("cannot link {0} and {1}: they are adjacent")]
    LinkOnEdge(Vertex, Vertex),
    #[error("cannot link vertex {0} to itself")]
    SelfLink(Vertex),
}

/// One structural mutation, in application order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    Hide(Vertex),
    AddLink(Vertex, Vertex),
    SetWeight { v: Vertex, from: Weight, to: Weight },
    AddVertex(Vertex),
}

/// Maintained per-vertex aggregate values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aggregates {
    pub deg: usize,
    pub nbr_weight: Weight,
    pub nbr_wmax: Weight,
    /// Cached `L(v)` if it has been materialized.
    pub link_set: Option<Vec<Vertex>>,
}

/// A vertex whose stored aggregates disagree with a fresh recomputation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggregateAudit {
    pub vertex: Vertex,
    pub stored: Aggregates,
    pub recomputed: Aggregates,
}

/// Generation-stamped membership marker reused across calls.
#[derive(Debug, Clone, Default)]
struct Marker {
    stamp: Vec<u32>,
    gen: u32,
}

impl Marker {
    fn reset(&mut self, len: usize) {
        if self.stamp.len() < len {
            self.stamp.resize(len, 0);
        }
        self.gen = self.gen.wrapping_add(1);
        if self.gen == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.gen = 1;
        }
    }

    fn set(&mut self, v: Vertex) -> bool {
        let fresh = self.stamp[v] != self.gen;
        self.stamp[v] = self.gen;
        fresh
    }

    fn get(&self, v: Vertex) -> bool {
        self.stamp[v] == self.gen
    }
}

#[derive(Debug, Clone)]
pub struct LinkGraph {
    base: Arc<WeightedGraph>,
    alive: Vec<bool>,
    n_alive: usize,
    edge_count: usize,
    link_count: usize,
    edges: Vec<Vec<Vertex>>,
    links: Vec<Vec<Vertex>>,
    link_cache: Vec<Option<Vec<Vertex>>>,
    weight: Vec<Weight>,
    nbr_weight: Vec<Weight>,
    nbr_wmax: Vec<Weight>,
    journal: Vec<Mutation>,
    track_touched: bool,
    touched: Vec<Vertex>,
    removed_mark: Marker,
    scan_mark: Marker,
}

pub(crate) fn sorted_insert(list: &mut Vec<Vertex>, v: Vertex) -> bool {
    match list.binary_search(&v) {
        Ok(_) => false,
        Err(pos) => {
            list.insert(pos, v);
            true
        }
    }
}

pub(crate) fn sorted_intersects(a: &[Vertex], b: &[Vertex]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

impl LinkGraph {
    pub fn from_graph(g: WeightedGraph) -> Self {
        Self::from_shared(Arc::new(g))
    }

    /// Link-graph `(G, ∅)` over a shared base graph.
    pub fn from_shared(base: Arc<WeightedGraph>) -> Self {
        let n = base.n();
        let edges: Vec<Vec<Vertex>> = (0..n).map(|v| base.neighbors(v).to_vec()).collect();
        let weight = base.weights().to_vec();
        let nbr_weight = edges
            .iter()
            .map(|list| list.iter().map(|&u| weight[u]).sum())
            .collect();
        let nbr_wmax = edges
            .iter()
            .map(|list| list.iter().map(|&u| weight[u]).max().unwrap_or(0))
            .collect();
        LinkGraph {
            alive: vec![true; n],
            n_alive: n,
            edge_count: base.m(),
            link_count: 0,
            links: vec![Vec::new(); n],
            link_cache: vec![None; n],
            edges,
            weight,
            nbr_weight,
            nbr_wmax,
            journal: Vec::new(),
            track_touched: false,
            touched: Vec::new(),
            removed_mark: Marker::default(),
            scan_mark: Marker::default(),
            base,
        }
    }

    /// The original input graph `G`.
    pub fn base(&self) -> &WeightedGraph {
        &self.base
    }

    pub fn base_shared(&self) -> Arc<WeightedGraph> {
        Arc::clone(&self.base)
    }

    /// Number of vertices of `G`; ids at or above this were created by folds.
    pub fn n_original(&self) -> usize {
        self.base.n()
    }

    pub fn is_original(&self, v: Vertex) -> bool {
        v < self.base.n()
    }

    /// Total number of vertex ids ever allocated (alive or not).
    pub fn capacity(&self) -> usize {
        self.alive.len()
    }

    pub fn n_alive(&self) -> usize {
        self.n_alive
    }

    pub fn is_empty(&self) -> bool {
        self.n_alive == 0
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn link_count(&self) -> usize {
        self.link_count
    }

    pub fn is_alive(&self, v: Vertex) -> bool {
        v < self.alive.len() && self.alive[v]
    }

    /// Live vertices in ascending order.
    pub fn live_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(v, _)| v)
    }

    pub fn weight(&self, v: Vertex) -> Weight {
        self.weight[v]
    }

    pub fn weight_of(&self, set: &[Vertex]) -> Weight {
        set.iter().map(|&v| self.weight[v]).sum()
    }

    pub fn wmax_of(&self, set: &[Vertex]) -> Weight {
        set.iter().map(|&v| self.weight[v]).max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> Weight {
        self.live_vertices().map(|v| self.weight[v]).sum()
    }

    /// Sorted live neighbors `N(v)`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.edges[v]
    }

    /// Sorted explicit link partners of `v`.
    pub fn link_partners(&self, v: Vertex) -> &[Vertex] {
        &self.links[v]
    }

    pub fn deg(&self, v: Vertex) -> usize {
        self.edges[v].len()
    }

    /// `w(N(v))`.
    pub fn nbr_weight(&self, v: Vertex) -> Weight {
        self.nbr_weight[v]
    }

    /// `w_max(N(v))`, zero for isolated vertices.
    pub fn nbr_wmax(&self, v: Vertex) -> Weight {
        self.nbr_wmax[v]
    }

    /// `deg_L(v)` if `L(v)` has been materialized.
    pub fn deg_l(&self, v: Vertex) -> Option<usize> {
        self.link_cache[v].as_ref().map(Vec::len)
    }

    pub fn link_known(&self, v: Vertex) -> bool {
        self.link_cache.get(v).is_some_and(Option::is_some)
    }

    /// Cached `L(v)` without materializing it.
    pub fn cached_links(&self, v: Vertex) -> Option<&[Vertex]> {
        self.link_cache[v].as_deref()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges[u].binary_search(&v).is_ok()
    }

    pub fn has_link(&self, u: Vertex, v: Vertex) -> bool {
        self.links[u].binary_search(&v).is_ok()
    }

    /// Whether two distinct live vertices are within distance two.
    pub fn conflict(&self, u: Vertex, v: Vertex) -> bool {
        u != v
            && (self.has_edge(u, v)
                || self.has_link(u, v)
                || sorted_intersects(&self.edges[u], &self.edges[v]))
    }

    fn check_alive(&self, v: Vertex) -> Result<(), LinkGraphError> {
        if v >= self.alive.len() {
            Err(LinkGraphError::OutOfRange(v))
        } else if !self.alive[v] {
            Err(LinkGraphError::Dead(v))
        } else {
            Ok(())
        }
    }

    /// Fresh `L(v) = links(v) ∪ N(N(v)) \ N[v]`, sorted, without touching the cache.
    pub fn compute_links(&self, v: Vertex) -> Vec<Vertex> {
        if let Some(cached) = &self.link_cache[v] {
            return cached.clone();
        }
        self.compute_links_fresh(v)
    }

    fn compute_links_fresh(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.links[v].clone();
        for &a in &self.edges[v] {
            out.extend(self.edges[a].iter().copied().filter(|&y| y != v));
        }
        out.sort_unstable();
        out.dedup();
        let nv = &self.edges[v];
        out.retain(|y| nv.binary_search(y).is_err());
        out
    }

    /// Materializes and caches `L(v)`.
    pub fn materialize_links(&mut self, v: Vertex) -> Result<&[Vertex], LinkGraphError> {
        self.check_alive(v)?;
        if self.link_cache[v].is_none() {
            let l = self.compute_links_fresh(v);
            self.link_cache[v] = Some(l);
        }
        Ok(self.link_cache[v].as_deref().unwrap())
    }

    /// `L(v)` (materialized), cloned.
    pub fn links_of(&mut self, v: Vertex) -> Vec<Vertex> {
        self.materialize_links(v)
            .map(<[Vertex]>::to_vec)
            .unwrap_or_default()
    }

    /// Sorted open 2-neighborhood `N₂(v) = N(v) ∪ L(v)`; materializes `L(v)`.
    pub fn two_neighborhood(&mut self, v: Vertex) -> Vec<Vertex> {
        let l = self.links_of(v);
        merge_sorted(&self.edges[v], &l)
    }

    /// `N₂(v)` without caching `L(v)`.
    pub fn two_neighborhood_fresh(&self, v: Vertex) -> Vec<Vertex> {
        merge_sorted(&self.edges[v], &self.compute_links(v))
    }

    /// Inserts link `{u, v}`. Returns `false` if it already existed.
    pub fn add_link(&mut self, u: Vertex, v: Vertex) -> Result<bool, LinkGraphError> {
        self.check_alive(u)?;
        self.check_alive(v)?;
        if u == v {
            return Err(LinkGraphError::SelfLink(u));
        }
        if self.has_edge(u, v) {
            return Err(LinkGraphError::LinkOnEdge(u, v));
        }
        if !sorted_insert(&mut self.links[u], v) {
            return Ok(false);
        }
        sorted_insert(&mut self.links[v], u);
        self.link_count += 1;
        if let Some(c) = &mut self.link_cache[u] {
            sorted_insert(c, v);
        }
        if let Some(c) = &mut self.link_cache[v] {
            sorted_insert(c, u);
        }
        self.journal.push(Mutation::AddLink(u.min(v), u.max(v)));
        if self.track_touched {
            self.touched.push(u);
            self.touched.push(v);
        }
        Ok(true)
    }

    /// Removes `v` together with all incident edges and links.
    pub fn hide_vertex(&mut self, v: Vertex) -> Result<(), LinkGraphError> {
        self.bulk_hide(&[v])
    }

    /// Removes every vertex of `set` in one pass over the affected adjacency lists.
    /// Observationally identical to hiding the members one at a time.
    pub fn bulk_hide(&mut self, set: &[Vertex]) -> Result<(), LinkGraphError> {
        for &x in set {
            self.check_alive(x)?;
        }
        if set.is_empty() {
            return Ok(());
        }
        let cap = self.capacity();
        self.removed_mark.reset(cap);
        let mut members = Vec::with_capacity(set.len());
        for &x in set {
            if self.removed_mark.set(x) {
                members.push(x);
            }
        }

        // Surviving vertices whose edge or link lists reference a removed vertex.
        self.scan_mark.reset(cap);
        let mut edge_aff = Vec::new();
        let mut link_aff = Vec::new();
        for &x in &members {
            for &a in &self.edges[x] {
                if !self.removed_mark.get(a) && self.scan_mark.set(a) {
                    edge_aff.push(a);
                }
            }
        }
        self.scan_mark.reset(cap);
        for &x in &members {
            for &b in &self.links[x] {
                if !self.removed_mark.get(b) && self.scan_mark.set(b) {
                    link_aff.push(b);
                }
            }
        }

        // Survivors with a cached L(y) that may contain a removed vertex: link
        // partners and vertices two edges away from a removed vertex.
        self.scan_mark.reset(cap);
        let mut cache_aff = Vec::new();
        for &b in &link_aff {
            if self.link_cache[b].is_some() && self.scan_mark.set(b) {
                cache_aff.push(b);
            }
        }
        for &x in &members {
            for &a in &self.edges[x] {
                for &y in &self.edges[a] {
                    if !self.removed_mark.get(y)
                        && self.link_cache[y].is_some()
                        && self.scan_mark.set(y)
                    {
                        cache_aff.push(y);
                    }
                }
            }
        }

        if self.track_touched {
            self.touched.extend_from_slice(&edge_aff);
            self.touched.extend_from_slice(&link_aff);
            for &a in &edge_aff {
                self.touched.extend(self.edges[a].iter().copied());
            }
        }

        let removed = &self.removed_mark;
        let mut removed_edges = 0usize;
        let mut removed_links = 0usize;
        for &a in &edge_aff {
            let before = self.edges[a].len();
            self.edges[a].retain(|&y| !removed.get(y));
            removed_edges += before - self.edges[a].len();
            self.nbr_weight[a] = self.edges[a].iter().map(|&y| self.weight[y]).sum();
            self.nbr_wmax[a] = self.edges[a].iter().map(|&y| self.weight[y]).max().unwrap_or(0);
        }
        for &b in &link_aff {
            let before = self.links[b].len();
            self.links[b].retain(|&y| !removed.get(y));
            removed_links += before - self.links[b].len();
        }
        for &y in &cache_aff {
            if let Some(c) = &mut self.link_cache[y] {
                c.retain(|&z| !removed.get(z));
            }
        }
        // Edges and links among removed vertices.
        let mut internal_edges = 0usize;
        let mut internal_links = 0usize;
        for &x in &members {
            internal_edges += self.edges[x].iter().filter(|&&y| removed.get(y)).count();
            internal_links += self.links[x].iter().filter(|&&y| removed.get(y)).count();
        }
        self.edge_count -= removed_edges + internal_edges / 2;
        self.link_count -= removed_links + internal_links / 2;

        for &x in &members {
            self.alive[x] = false;
            self.edges[x].clear();
            self.links[x].clear();
            self.link_cache[x] = None;
            self.n_alive -= 1;
            self.journal.push(Mutation::Hide(x));
        }

        // A cached L(a) of a former neighbor may have reached vertices only
        // through a removed common neighbor.
        for &a in &edge_aff {
            if let Some(cache) = self.link_cache[a].take() {
                let kept: Vec<Vertex> = cache
                    .into_iter()
                    .filter(|&z| {
                        self.has_link(a, z) || sorted_intersects(&self.edges[a], &self.edges[z])
                    })
                    .collect();
                self.link_cache[a] = Some(kept);
            }
        }
        Ok(())
    }

    /// Removes `set` and links every pair of surviving vertices that shared a
    /// removed common neighbor and are neither adjacent nor linked already, so
    /// distances among survivors are unchanged. Returns the inserted links.
    pub fn remove_preserving(
        &mut self,
        set: &[Vertex],
    ) -> Result<Vec<(Vertex, Vertex)>, LinkGraphError> {
        for &x in set {
            self.check_alive(x)?;
        }
        let cap = self.capacity();
        let mut gone = vec![false; cap];
        for &x in set {
            gone[x] = true;
        }
        let mut pending = Vec::new();
        for &x in set {
            let nb: Vec<Vertex> = self.edges[x].iter().copied().filter(|&a| !gone[a]).collect();
            for i in 0..nb.len() {
                for &b in &nb[i + 1..] {
                    let a = nb[i];
                    if !self.has_edge(a, b) && !self.has_link(a, b) {
                        pending.push((a, b));
                    }
                }
            }
        }
        pending.sort_unstable();
        pending.dedup();
        self.bulk_hide(set)?;
        let mut added = Vec::with_capacity(pending.len());
        for (a, b) in pending {
            if self.add_link(a, b)? {
                added.push((a, b));
            }
        }
        Ok(added)
    }

    /// Changes `w(v)` and updates the neighbor aggregates.
    pub fn set_weight(&mut self, v: Vertex, w: Weight) -> Result<(), LinkGraphError> {
        self.check_alive(v)?;
        let from = self.weight[v];
        if from == w {
            return Ok(());
        }
        self.weight[v] = w;
        for i in 0..self.edges[v].len() {
            let a = self.edges[v][i];
            self.nbr_weight[a] = self.nbr_weight[a] - from + w;
            if w > self.nbr_wmax[a] {
                self.nbr_wmax[a] = w;
            } else if from == self.nbr_wmax[a] && w < from {
                self.nbr_wmax[a] =
                    self.edges[a].iter().map(|&y| self.weight[y]).max().unwrap_or(0);
            }
        }
        self.journal.push(Mutation::SetWeight { v, from, to: w });
        if self.track_touched {
            // Every vertex with v in its 2-neighborhood sees a new weight.
            self.touched.push(v);
            self.touched.extend_from_slice(&self.links[v]);
            for &a in &self.edges[v] {
                self.touched.push(a);
                self.touched.extend_from_slice(&self.edges[a]);
            }
        }
        Ok(())
    }

    /// Allocates a new isolated vertex (no edges, no links).
    pub fn add_vertex(&mut self, w: Weight) -> Vertex {
        let v = self.alive.len();
        self.alive.push(true);
        self.n_alive += 1;
        self.edges.push(Vec::new());
        self.links.push(Vec::new());
        self.link_cache.push(None);
        self.weight.push(w);
        self.nbr_weight.push(0);
        self.nbr_wmax.push(0);
        self.journal.push(Mutation::AddVertex(v));
        if self.track_touched {
            self.touched.push(v);
        }
        v
    }

    pub fn journal(&self) -> &[Mutation] {
        &self.journal
    }

    pub fn clear_journal(&mut self) {
        self.journal.clear();
    }

    /// Enables recording of vertices whose 2-neighborhood changed.
    pub fn set_track_touched(&mut self, on: bool) {
        self.track_touched = on;
        if !on {
            self.touched.clear();
        }
    }

    /// Drains the touched-vertex buffer (may contain dead vertices and duplicates).
    pub fn take_touched(&mut self) -> Vec<Vertex> {
        std::mem::take(&mut self.touched)
    }

    fn stored_aggregates(&self, v: Vertex) -> Aggregates {
        Aggregates {
            deg: self.edges[v].len(),
            nbr_weight: self.nbr_weight[v],
            nbr_wmax: self.nbr_wmax[v],
            link_set: self.link_cache[v].clone(),
        }
    }

    fn fresh_aggregates(&self, v: Vertex) -> Aggregates {
        let nbrs: Vec<Vertex> = self.edges[v]
            .iter()
            .copied()
            .filter(|&u| self.alive[u])
            .collect();
        Aggregates {
            deg: nbrs.len(),
            nbr_weight: nbrs.iter().map(|&u| self.weight[u]).sum(),
            nbr_wmax: nbrs.iter().map(|&u| self.weight[u]).max().unwrap_or(0),
            link_set: self.link_cache[v]
                .as_ref()
                .map(|_| self.compute_links_fresh(v)),
        }
    }

    /// Compares every stored aggregate with a recomputation from scratch.
    pub fn audit_aggregates(&self) -> Vec<AggregateAudit> {
        self.live_vertices()
            .filter_map(|v| {
                let stored = self.stored_aggregates(v);
                let recomputed = self.fresh_aggregates(v);
                (stored != recomputed).then_some(AggregateAudit {
                    vertex: v,
                    stored,
                    recomputed,
                })
            })
            .collect()
    }

    /// Checks symmetry, disjointness and liveness of the adjacency structure.
    pub fn check_structure(&self) -> Result<(), String> {
        let mut edges = 0;
        let mut links = 0;
        for v in 0..self.capacity() {
            if !self.alive[v] {
                if !self.edges[v].is_empty() || !self.links[v].is_empty() {
                    return Err(format!("dead vertex {v} has adjacency"));
                }
                continue;
            }
            for &u in &self.edges[v] {
                if !self.alive[u] || u == v || !self.has_edge(u, v) {
                    return Err(format!("bad edge {v}-{u}"));
                }
                if self.has_link(u, v) {
                    return Err(format!("{v}-{u} is both edge and link"));
                }
            }
            for &u in &self.links[v] {
                if !self.alive[u] || u == v || !self.has_link(u, v) {
                    return Err(format!("bad link {v}~{u}"));
                }
            }
            edges += self.edges[v].len();
            links += self.links[v].len();
        }
        if edges / 2 != self.edge_count || links / 2 != self.link_count {
            return Err("edge or link count out of sync".into());
        }
        Ok(())
    }

    /// Structural equality: liveness, adjacency, links, weights and caches.
    /// Per-vertex data of dead vertices is ignored.
    pub fn same_structure(&self, other: &LinkGraph) -> bool {
        self.alive == other.alive
            && self.edge_count == other.edge_count
            && self.link_count == other.link_count
            && self.live_vertices().all(|v| {
                self.edges[v] == other.edges[v]
                    && self.links[v] == other.links[v]
                    && self.weight[v] == other.weight[v]
                    && self.nbr_weight[v] == other.nbr_weight[v]
                    && self.nbr_wmax[v] == other.nbr_wmax[v]
                    && self.link_cache[v] == other.link_cache[v]
            })
    }

    /// Induced link-subgraph `𝒢[keep]`: vertex ids are preserved, everything
    /// outside `keep` is dead, and only edges and links inside `keep` survive.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> LinkGraph {
        let cap = self.capacity();
        let mut inside = vec![false; cap];
        for &v in keep {
            if self.is_alive(v) {
                inside[v] = true;
            }
        }
        let edges: Vec<Vec<Vertex>> = (0..cap)
            .map(|v| {
                if inside[v] {
                    self.edges[v].iter().copied().filter(|&u| inside[u]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let links: Vec<Vec<Vertex>> = (0..cap)
            .map(|v| {
                if inside[v] {
                    self.links[v].iter().copied().filter(|&u| inside[u]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let weight = self.weight.clone();
        let nbr_weight = edges
            .iter()
            .map(|l| l.iter().map(|&u| weight[u]).sum())
            .collect();
        let nbr_wmax = edges
            .iter()
            .map(|l| l.iter().map(|&u| weight[u]).max().unwrap_or(0))
            .collect();
        LinkGraph {
            base: Arc::clone(&self.base),
            n_alive: inside.iter().filter(|&&b| b).count(),
            edge_count: edges.iter().map(Vec::len).sum::<usize>() / 2,
            link_count: links.iter().map(Vec::len).sum::<usize>() / 2,
            alive: inside,
            edges,
            links,
            link_cache: vec![None; cap],
            weight,
            nbr_weight,
            nbr_wmax,
            journal: Vec::new(),
            track_touched: false,
            touched: Vec::new(),
            removed_mark: Marker::default(),
            scan_mark: Marker::default(),
        }
    }

    /// Whether `set` (live vertices) is a 2-packing set of this link-graph.
    pub fn is_2packing(&self, set: &[Vertex]) -> bool {
        let cap = self.capacity();
        let mut inside = vec![false; cap];
        for &v in set {
            if !self.is_alive(v) || inside[v] {
                return false;
            }
            inside[v] = true;
        }
        for &x in set {
            if self.edges[x].iter().chain(&self.links[x]).any(|&y| inside[y]) {
                return false;
            }
            for &a in &self.edges[x] {
                if self.edges[a].iter().any(|&y| y != x && inside[y]) {
                    return false;
                }
            }
        }
        true
    }

    #[doc(hidden)]
    pub fn corrupt_aggregate_for_test(&mut self, v: Vertex) {
        self.nbr_weight[v] += 1;
    }
}

/// Union of two sorted, duplicate-free lists.
pub(crate) fn merge_sorted(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
