//! Exact data reduction rules, the exhaustive application engine, the
//! reduction stack and solution reconstruction.
//!
//! Every removal goes through [`LinkGraph::remove_preserving`], so after any
//! sequence of reductions two surviving original vertices conflict in the
//! reduced link-graph exactly when they conflict in the input graph.

mod engine;
mod rules;
#[cfg(test)]
mod rule_tests;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Vertex, Weight};
use crate::link_graph::LinkGraph;
use crate::solution::Solution;

pub use engine::{reduce_exhaustively, EngineOptions, Reducer};
pub use rules::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    HeavyVertex,
    NeighborRemoval,
    NeighborhoodRemoval,
    SplitNeighborRemoval,
    IntersectionRemoval,
    SplitIntersectionRemoval,
    Domination,
    WeightedClique,
    WeightTransfer,
    NeighborhoodFolding,
    FastDegree1,
    FastDegree2,
    FastNeighborhoodRemoval,
    /// Heuristic inclusion made by the peeling heuristic.
    PeelInclude,
    /// Heuristic exclusion made by the peeling heuristic.
    PeelExclude,
}

impl Rule {
    pub const EXACT: [Rule; 13] = [
        Rule::HeavyVertex,
        Rule::NeighborRemoval,
        Rule::NeighborhoodRemoval,
        Rule::SplitNeighborRemoval,
        Rule::IntersectionRemoval,
        Rule::SplitIntersectionRemoval,
        Rule::Domination,
        Rule::WeightedClique,
        Rule::WeightTransfer,
        Rule::NeighborhoodFolding,
        Rule::FastDegree1,
        Rule::FastDegree2,
        Rule::FastNeighborhoodRemoval,
    ];

    /// Rule number 1..=13 for exact rules.
    pub fn number(self) -> Option<u8> {
        Self::EXACT
            .iter()
            .position(|&r| r == self)
            .map(|i| i as u8 + 1)
    }

    pub fn from_number(k: u8) -> Option<Rule> {
        (1..=13).contains(&k).then(|| Self::EXACT[k as usize - 1])
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_fast(self) -> bool {
        matches!(
            self,
            Rule::FastDegree1 | Rule::FastDegree2 | Rule::FastNeighborhoodRemoval
        )
    }
}

pub const RULE_SLOTS: usize = 15;

/// What reconstruction has to do for an event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventKind {
    /// The pivot is in the solution.
    Include,
    /// The removed vertices are not needed.
    Exclude,
    /// Heuristically excluded pivot; re-added if none of `conflicts` (its
    /// 2-neighborhood at peel time) ends up in the solution.
    PeelExclude { conflicts: Vec<Vertex> },
    /// Pivot folded into `survivors` by subtracting its weight; the pivot is
    /// added if no survivor is in the solution.
    WeightTransfer { survivors: Vec<Vertex> },
    /// Pivot and its 2-neighborhood `folded` replaced by `new_vertex`.
    NeighborhoodFold {
        folded: Vec<Vertex>,
        new_vertex: Vertex,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionEvent {
    pub rule: Rule,
    pub pivot: Vertex,
    pub kind: EventKind,
    /// Vertices hidden by this event (pivot included when it was removed).
    pub removed: Vec<Vertex>,
    pub added_links: Vec<(Vertex, Vertex)>,
    /// Weight moved into the offset by this event.
    pub offset: Weight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConfigName {
    Full,
    Fast,
    Strong,
    Core,
    Transform,
}

impl ConfigName {
    pub const ALL: [ConfigName; 5] = [
        ConfigName::Transform,
        ConfigName::Fast,
        ConfigName::Core,
        ConfigName::Strong,
        ConfigName::Full,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConfigName::Full => "full",
            ConfigName::Fast => "fast",
            ConfigName::Strong => "strong",
            ConfigName::Core => "core",
            ConfigName::Transform => "transform",
        }
    }
}

impl fmt::Display for ConfigName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown reduction configuration `{0}` (expected full, fast, strong, core or transform)")]
pub struct UnknownConfig(pub String);

impl FromStr for ConfigName {
    type Err = UnknownConfig;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(ConfigName::Full),
            "fast" => Ok(ConfigName::Fast),
            "strong" => Ok(ConfigName::Strong),
            "core" => Ok(ConfigName::Core),
            "transform" => Ok(ConfigName::Transform),
            other => Err(UnknownConfig(other.to_string())),
        }
    }
}

/// Ordered list of rules to apply exhaustively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionConfig {
    pub name: Option<ConfigName>,
    pub order: Vec<Rule>,
}

impl ReductionConfig {
    pub fn named(name: ConfigName) -> Self {
        let nums: &[u8] = match name {
            ConfigName::Full => &[11, 12, 13, 2, 7, 9, 6, 4, 10],
            ConfigName::Fast => &[11, 12, 13],
            ConfigName::Strong => &[11, 12, 13, 2, 9, 6, 4, 10],
            ConfigName::Core => &[2, 7, 9, 6, 4, 10],
            ConfigName::Transform => &[],
        };
        ReductionConfig {
            name: Some(name),
            order: nums.iter().map(|&k| Rule::from_number(k).unwrap()).collect(),
        }
    }

    pub fn custom(order: Vec<Rule>) -> Self {
        ReductionConfig { name: None, order }
    }

    pub fn full() -> Self {
        Self::named(ConfigName::Full)
    }
    pub fn fast() -> Self {
        Self::named(ConfigName::Fast)
    }
    pub fn strong() -> Self {
        Self::named(ConfigName::Strong)
    }
    pub fn core() -> Self {
        Self::named(ConfigName::Core)
    }
}

/// Per-rule application counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionStats {
    pub applications: [u64; RULE_SLOTS],
}

impl ReductionStats {
    pub fn count(&self, rule: Rule) -> u64 {
        self.applications[rule.index()]
    }

    pub fn total(&self) -> u64 {
        self.applications.iter().sum()
    }
}

/// The reduced instance `𝒦` with its stack and offset.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub graph: LinkGraph,
    pub stack: Vec<ReductionEvent>,
    pub offset: Weight,
    pub stats: ReductionStats,
}

impl ReducedInstance {
    pub fn new(graph: LinkGraph) -> Self {
        ReducedInstance {
            graph,
            stack: Vec::new(),
            offset: 0,
            stats: ReductionStats::default(),
        }
    }

    pub fn is_fully_reduced(&self) -> bool {
        self.graph.is_empty()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("solution is not a 2-packing set of the reduced instance")]
    Infeasible,
}

/// Replays `stack` backwards over the membership vector `inside`.
pub fn unwind(stack: &[ReductionEvent], inside: &mut Vec<bool>) {
    for ev in stack.iter().rev() {
        let need = ev
            .removed
            .iter()
            .chain(std::iter::once(&ev.pivot))
            .max()
            .copied()
            .unwrap_or(0)
            + 1;
        if inside.len() < need {
            inside.resize(need, false);
        }
        match &ev.kind {
            EventKind::Include => inside[ev.pivot] = true,
            EventKind::Exclude => {}
            EventKind::PeelExclude { conflicts } => {
                if !conflicts.iter().any(|&c| inside.get(c).copied().unwrap_or(false)) {
                    inside[ev.pivot] = true;
                }
            }
            EventKind::WeightTransfer { survivors } => {
                if !survivors.iter().any(|&c| inside.get(c).copied().unwrap_or(false)) {
                    inside[ev.pivot] = true;
                }
            }
            EventKind::NeighborhoodFold { folded, new_vertex } => {
                if inside.get(*new_vertex).copied().unwrap_or(false) {
                    inside[*new_vertex] = false;
                    for &z in folded {
                        inside[z] = true;
                    }
                } else {
                    inside[ev.pivot] = true;
                }
            }
        }
    }
}

/// Greedily adds free live vertices of `lg` to `inside`, heaviest first
/// (ties by ascending id).
pub fn maximize(lg: &LinkGraph, inside: &mut Vec<bool>) {
    let cap = lg.capacity();
    if inside.len() < cap {
        inside.resize(cap, false);
    }
    // covered[y]: y lies in N[x] for some member x.
    let mut covered = vec![false; cap];
    for x in (0..cap).filter(|&x| inside[x]) {
        covered[x] = true;
        for &y in lg.neighbors(x) {
            covered[y] = true;
        }
    }
    let mut order: Vec<Vertex> = lg.live_vertices().filter(|&v| !inside[v]).collect();
    order.sort_by(|&a, &b| lg.weight(b).cmp(&lg.weight(a)).then(a.cmp(&b)));
    for v in order {
        let free = !covered[v]
            && lg.neighbors(v).iter().all(|&y| !covered[y])
            && lg.link_partners(v).iter().all(|&y| !inside[y]);
        if free {
            inside[v] = true;
            covered[v] = true;
            for &y in lg.neighbors(v) {
                covered[y] = true;
            }
        }
    }
}

fn members(inside: &[bool]) -> Vec<Vertex> {
    inside
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(v, _)| v)
        .collect()
}

/// Maps a feasible solution of `ri.graph` back to a feasible, maximal
/// 2-packing set of the input graph.
pub fn restore(ri: &ReducedInstance, s_reduced: &[Vertex]) -> Result<Solution, ReductionError> {
    if !ri.graph.is_2packing(s_reduced) {
        return Err(ReductionError::Infeasible);
    }
    let base = ri.graph.base_shared();
    let mut inside = vec![false; ri.graph.capacity()];
    for &v in s_reduced {
        inside[v] = true;
    }
    unwind(&ri.stack, &mut inside);
    inside.truncate(base.n());
    let original = LinkGraph::from_shared(base.clone());
    maximize(&original, &mut inside);
    Ok(Solution::on_graph(&base, members(&inside)))
}

/// Unwinds `stack` over `s` and maximizes on `target` (an unmodified copy of
/// the instance the stack was built on).
pub fn restore_onto(target: &LinkGraph, stack: &[ReductionEvent], s: &[Vertex]) -> Solution {
    let mut inside = vec![false; target.capacity().max(s.iter().max().map_or(0, |m| m + 1))];
    for &v in s {
        inside[v] = true;
    }
    unwind(stack, &mut inside);
    inside.truncate(target.capacity());
    maximize(target, &mut inside);
    Solution::from_vertices(members(&inside), |v| target.weight(v))
}
