//! Independent set solvers used on transformed instances and D-Cores: greedy
//! construction, iterated local search and an exact branch-and-bound.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Vertex, Weight, WeightedGraph};
use crate::oracle::is_independent;
use crate::solution::Solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MwisSolverKind {
    Greedy,
    LocalSearch,
    ExactBB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MwisSolverSpec {
    pub kind: MwisSolverKind,
    pub time_limit: Duration,
    pub seed: u64,
    /// Largest connected component solved by branch-and-bound.
    pub exact_size_cap: usize,
    /// Optional cap on local search iterations, for reproducible runs.
    pub max_iterations: Option<u64>,
    /// Non-improving iterations before local search returns to its best solution.
    pub k_stall: u64,
}

impl MwisSolverSpec {
    pub fn new(kind: MwisSolverKind, time_limit: Duration, seed: u64) -> Self {
        assert!(!time_limit.is_zero(), "time limit must be positive");
        MwisSolverSpec {
            kind,
            time_limit,
            seed,
            exact_size_cap: 400,
            max_iterations: None,
            k_stall: 1000,
        }
    }

    pub fn with_max_iterations(mut self, iterations: u64) -> Self {
        self.max_iterations = Some(iterations);
        self
    }

    pub fn with_size_cap(mut self, cap: usize) -> Self {
        assert!(cap >= 1, "size cap must be at least 1");
        self.exact_size_cap = cap;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MwisResult {
    pub solution: Solution,
    pub proven_optimal: bool,
    pub time_to_best: Duration,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MwisError {
    #[error("start solution is not an independent set")]
    NotIndependent,
}

/// `w(a)/(deg(a)+1)` against `w(b)/(deg(b)+1)`, descending, ties by id.
fn by_ratio(g: &WeightedGraph, a: Vertex, b: Vertex) -> std::cmp::Ordering {
    let lhs = g.weight(a) as u128 * (g.degree(b) as u128 + 1);
    let rhs = g.weight(b) as u128 * (g.degree(a) as u128 + 1);
    rhs.cmp(&lhs).then(a.cmp(&b))
}

/// Maximal independent set built in descending order of `w(v)/(deg(v)+1)`.
pub fn greedy_mwis(g: &WeightedGraph) -> Solution {
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.sort_by(|&a, &b| by_ratio(g, a, b));
    let mut blocked = vec![false; g.n()];
    let mut chosen = Vec::new();
    for v in order {
        if !blocked[v] {
            chosen.push(v);
            blocked[v] = true;
            for &u in g.neighbors(v) {
                blocked[u] = true;
            }
        }
    }
    Solution::on_graph(g, chosen)
}

/// Incremental solution state for local search.
struct State<'a> {
    g: &'a WeightedGraph,
    in_sol: Vec<bool>,
    /// Number of solution neighbors.
    tight: Vec<u32>,
    /// Total weight of solution neighbors.
    nbr_sol_weight: Vec<Weight>,
    weight: Weight,
    queue: VecDeque<Vertex>,
    queued: Vec<bool>,
}

impl<'a> State<'a> {
    fn new(g: &'a WeightedGraph, start: &[Vertex]) -> Self {
        let n = g.n();
        let mut s = State {
            g,
            in_sol: vec![false; n],
            tight: vec![0; n],
            nbr_sol_weight: vec![0; n],
            weight: 0,
            queue: VecDeque::new(),
            queued: vec![false; n],
        };
        for &v in start {
            s.insert(v);
        }
        for v in 0..n {
            s.enqueue(v);
        }
        s
    }

    fn insert(&mut self, v: Vertex) {
        let w = self.g.weight(v);
        self.in_sol[v] = true;
        self.weight += w;
        for &y in self.g.neighbors(v) {
            self.tight[y] += 1;
            self.nbr_sol_weight[y] += w;
        }
    }

    fn remove(&mut self, v: Vertex) {
        let w = self.g.weight(v);
        self.in_sol[v] = false;
        self.weight -= w;
        for &y in self.g.neighbors(v) {
            self.tight[y] -= 1;
            self.nbr_sol_weight[y] -= w;
        }
    }

    fn enqueue(&mut self, v: Vertex) {
        if !self.queued[v] {
            self.queued[v] = true;
            self.queue.push_back(v);
        }
    }

    /// Queues every vertex whose move evaluation may depend on `v`.
    fn enqueue_around(&mut self, v: Vertex) {
        let g = self.g;
        self.enqueue(v);
        for &y in g.neighbors(v) {
            self.enqueue(y);
            for &z in g.neighbors(y) {
                if self.in_sol[z] {
                    self.enqueue(z);
                }
            }
        }
    }

    /// Inserts `v` and evicts its solution neighbors.
    fn force_insert(&mut self, v: Vertex) {
        let evicted: Vec<Vertex> = self
            .g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| self.in_sol[u])
            .collect();
        for &u in &evicted {
            self.remove(u);
        }
        self.insert(v);
        self.enqueue_around(v);
        for u in evicted {
            self.enqueue_around(u);
        }
    }

    /// Replaces solution vertex `u` by one or more of its neighbors whose only
    /// solution neighbor is `u`, if that gains weight.
    fn try_expand(&mut self, u: Vertex) -> bool {
        let g = self.g;
        let mut cand: Vec<Vertex> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&x| self.tight[x] == 1)
            .collect();
        if cand.is_empty() {
            return false;
        }
        cand.sort_by(|&a, &b| g.weight(b).cmp(&g.weight(a)).then(a.cmp(&b)));
        let wu = g.weight(u);
        let mut picked: Vec<Vertex> = Vec::new();
        let mut total = 0;
        for &x in &cand {
            if picked.iter().all(|&p| !g.has_edge(p, x)) {
                picked.push(x);
                total += g.weight(x);
            }
        }
        if total <= wu {
            // Greedy may miss the best pair; check pairs directly.
            picked.clear();
            let mut best = wu;
            let lim = cand.len().min(64);
            for i in 0..lim {
                if i + 1 < lim && g.weight(cand[i]) + g.weight(cand[i + 1]) <= best {
                    break;
                }
                for j in i + 1..lim {
                    let pair = g.weight(cand[i]) + g.weight(cand[j]);
                    if pair > best && !g.has_edge(cand[i], cand[j]) {
                        best = pair;
                        picked = vec![cand[i], cand[j]];
                    }
                }
            }
            if picked.is_empty() {
                return false;
            }
        }
        self.remove(u);
        for &x in &picked {
            self.insert(x);
        }
        self.enqueue_around(u);
        for x in picked {
            self.enqueue_around(x);
        }
        true
    }

    /// Applies improving moves until none is left. Never lowers the weight.
    fn descend(&mut self) {
        while let Some(v) = self.queue.pop_front() {
            self.queued[v] = false;
            if self.in_sol[v] {
                self.try_expand(v);
            } else if self.tight[v] == 0 || self.g.weight(v) > self.nbr_sol_weight[v] {
                self.force_insert(v);
            }
        }
    }

    fn members(&self) -> Vec<Vertex> {
        (0..self.g.n()).filter(|&v| self.in_sol[v]).collect()
    }

    fn reset_to(&mut self, vs: &[Vertex]) {
        for v in self.members() {
            self.remove(v);
        }
        for &v in vs {
            self.insert(v);
        }
    }
}

/// Iterated local search from `start`. `on_best(weight, elapsed)` is called
/// every time the best solution improves, starting with the initial descent.
pub fn local_search_mwis_with(
    g: &WeightedGraph,
    start: &[Vertex],
    spec: &MwisSolverSpec,
    mut on_best: impl FnMut(Weight, Duration),
) -> Result<Solution, MwisError> {
    if !is_independent(g, start) {
        return Err(MwisError::NotIndependent);
    }
    let clock = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut st = State::new(g, start);
    st.descend();
    let mut best = st.members();
    let mut best_w = st.weight;
    on_best(best_w, clock.elapsed());
    let n = g.n();
    let mut iterations = 0u64;
    let mut stalled = 0u64;
    while n > 0 && best.len() < n {
        if spec.max_iterations.is_some_and(|cap| iterations >= cap)
            || clock.elapsed() >= spec.time_limit
        {
            break;
        }
        iterations += 1;
        let mut v = rng.gen_range(0..n);
        for _ in 0..32 {
            if !st.in_sol[v] {
                break;
            }
            v = rng.gen_range(0..n);
        }
        if st.in_sol[v] {
            continue;
        }
        st.force_insert(v);
        st.descend();
        if st.weight > best_w {
            best_w = st.weight;
            best = st.members();
            stalled = 0;
            on_best(best_w, clock.elapsed());
        } else {
            stalled += 1;
            if stalled % spec.k_stall.max(1) == 0 {
                st.reset_to(&best);
            }
        }
    }
    Ok(Solution::on_graph(g, best))
}

pub fn local_search_mwis(
    g: &WeightedGraph,
    start: &[Vertex],
    spec: &MwisSolverSpec,
) -> Result<Solution, MwisError> {
    local_search_mwis_with(g, start, spec, |_, _| {})
}

/// Connected components, each sorted.
pub fn components(g: &WeightedGraph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            i += 1;
            for &u in g.neighbors(v) {
                if comp[u] == usize::MAX {
                    comp[u] = id;
                    members.push(u);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

type Bits = Vec<u64>;

fn bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn ones(b: &Bits) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(k, &word)| {
        let mut w = word;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(k * 64 + t)
        })
    })
}

fn count_and(a: &Bits, b: &Bits) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

/// Branch-and-bound over one component, with local ids.
struct Search {
    adj: Vec<Bits>,
    w: Vec<Weight>,
    best: Weight,
    best_set: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    deadline: Instant,
    aborted: bool,
    improved_at: Instant,
}

impl Search {
    /// Upper bound from a greedy clique cover: each clique contributes its
    /// heaviest member.
    fn bound(&self, p: &Bits) -> Weight {
        let mut rest = p.clone();
        let mut total = 0;
        let mut order: Vec<usize> = ones(p).collect();
        order.sort_by(|&a, &b| self.w[b].cmp(&self.w[a]));
        for v in order {
            if !bit(&rest, v) {
                continue;
            }
            total += self.w[v];
            // Grow a clique from v within the remaining vertices.
            let mut cand: Bits = rest.iter().zip(&self.adj[v]).map(|(r, a)| r & a).collect();
            rest[v / 64] &= !(1 << (v % 64));
            loop {
                let Some(u) = ones(&cand).next() else { break };
                rest[u / 64] &= !(1 << (u % 64));
                for (c, a) in cand.iter_mut().zip(&self.adj[u]) {
                    *c &= a;
                }
            }
        }
        total
    }

    fn run(&mut self, mut p: Bits, weight: Weight) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes % 1024 == 0 && Instant::now() >= self.deadline {
            self.aborted = true;
            return;
        }
        let pushed = self.current.len();
        let mut weight = weight;
        // Vertices without candidate neighbors are always taken.
        loop {
            let isolated: Vec<usize> = ones(&p)
                .filter(|&v| count_and(&self.adj[v], &p) == 0)
                .collect();
            if isolated.is_empty() {
                break;
            }
            for v in isolated {
                p[v / 64] &= !(1 << (v % 64));
                weight += self.w[v];
                self.current.push(v);
            }
        }
        if weight > self.best {
            self.best = weight;
            self.best_set = self.current.clone();
            self.improved_at = Instant::now();
        }
        let branch = ones(&p).max_by_key(|&v| (count_and(&self.adj[v], &p), self.w[v]));
        if let Some(v) = branch {
            if weight + self.bound(&p) > self.best {
                let mut with = p.clone();
                for (x, a) in with.iter_mut().zip(&self.adj[v]) {
                    *x &= !a;
                }
                with[v / 64] &= !(1 << (v % 64));
                self.current.push(v);
                self.run(with, weight + self.w[v]);
                self.current.pop();
                p[v / 64] &= !(1 << (v % 64));
                if weight + self.bound(&p) > self.best {
                    self.run(p, weight);
                }
            }
        }
        self.current.truncate(pushed);
    }
}

/// Exact branch-and-bound per connected component, branching on a vertex of
/// maximum remaining degree. Components above the size cap, and components
/// left unfinished at the deadline, are completed heuristically.
pub fn exact_mwis_bb(g: &WeightedGraph, spec: &MwisSolverSpec) -> MwisResult {
    let clock = Instant::now();
    let deadline = clock + spec.time_limit;
    let mut chosen = Vec::new();
    let mut optimal = true;
    let mut last_improvement = Duration::ZERO;
    let mut comps = components(g);
    comps.sort_by_key(|c| c.len());
    for comp in comps {
        let local = induced(g, &comp);
        let start = greedy_mwis(&local);
        if comp.len() > spec.exact_size_cap || Instant::now() >= deadline {
            optimal = false;
            let remaining = deadline.saturating_duration_since(Instant::now());
            let sol = if comp.len() > spec.exact_size_cap && !remaining.is_zero() {
                let ls = MwisSolverSpec {
                    time_limit: remaining.min(spec.time_limit / 4).max(Duration::from_millis(1)),
                    ..*spec
                };
                local_search_mwis(&local, start.vertices(), &ls).expect("greedy is independent")
            } else {
                start
            };
            chosen.extend(sol.vertices().iter().map(|&i| comp[i]));
            last_improvement = clock.elapsed();
            continue;
        }
        let k = comp.len();
        let words = k.div_ceil(64);
        let mut adj = vec![vec![0u64; words]; k];
        for i in 0..k {
            for &j in local.neighbors(i) {
                adj[i][j / 64] |= 1 << (j % 64);
            }
        }
        let mut p = vec![0u64; words];
        for i in 0..k {
            p[i / 64] |= 1 << (i % 64);
        }
        let now = Instant::now();
        let mut search = Search {
            adj,
            w: local.weights().to_vec(),
            best: start.weight(),
            best_set: start.vertices().to_vec(),
            current: Vec::new(),
            nodes: 0,
            deadline,
            aborted: false,
            improved_at: now,
        };
        search.run(p, 0);
        if search.aborted {
            optimal = false;
        }
        last_improvement = last_improvement.max(search.improved_at - clock);
        chosen.extend(search.best_set.iter().map(|&i| comp[i]));
    }
    MwisResult {
        solution: Solution::on_graph(g, chosen),
        proven_optimal: optimal,
        time_to_best: last_improvement,
    }
}

/// Subgraph induced by the sorted vertex list `vs`, relabelled to `0..vs.len()`.
pub fn induced(g: &WeightedGraph, vs: &[Vertex]) -> WeightedGraph {
    let adj = vs
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter_map(|u| vs.binary_search(u).ok())
                .collect()
        })
        .collect();
    let w = vs.iter().map(|&v| g.weight(v)).collect();
    WeightedGraph::from_adjacency(adj, w).expect("induced subgraph is valid")
}

/// Runs the solver selected by `spec`; local search starts from the greedy
/// solution.
pub fn solve(g: &WeightedGraph, spec: &MwisSolverSpec) -> MwisResult {
    let clock = Instant::now();
    match spec.kind {
        MwisSolverKind::Greedy => MwisResult {
            solution: greedy_mwis(g),
            proven_optimal: false,
            time_to_best: clock.elapsed(),
        },
        MwisSolverKind::LocalSearch => {
            let start = greedy_mwis(g);
            let mut t_best = Duration::ZERO;
            let solution = local_search_mwis_with(g, start.vertices(), spec, |_, t| t_best = t)
                .expect("greedy is independent");
            MwisResult {
                solution,
                proven_optimal: false,
                time_to_best: t_best,
            }
        }
        MwisSolverKind::ExactBB => exact_mwis_bb(g, spec),
    }
}
