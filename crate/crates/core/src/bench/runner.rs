//! Solver dispatch with timing, memory accounting and re-verification.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use super::records::RunRecord;
use crate::drp::{drp, DrpParams, DrpPreset};
use crate::graph::WeightedGraph;
use crate::link_graph::LinkGraph;
use crate::mem;
use crate::mwis::{exact_mwis_bb, MwisSolverKind, MwisSolverSpec};
use crate::oracle::{brute_mw2ps, is_2packing, OracleBudget, OracleError};
use crate::peel::{red_w2pack, PeelConfig};
use crate::reductions::{ConfigName, ReductionConfig};
use crate::solution::Solution;
use crate::transform::{lift, reduce_and_transform, TransformError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SolverChoice {
    Peel,
    DrpLs,
    DrpExact,
    DrpNoCore,
    ExactPipeline,
    Oracle,
}

impl SolverChoice {
    pub const ALL: [SolverChoice; 6] = [
        SolverChoice::Peel,
        SolverChoice::DrpLs,
        SolverChoice::DrpExact,
        SolverChoice::DrpNoCore,
        SolverChoice::ExactPipeline,
        SolverChoice::Oracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SolverChoice::Peel => "peel",
            SolverChoice::DrpLs => "drp-ls",
            SolverChoice::DrpExact => "drp-exact",
            SolverChoice::DrpNoCore => "drp-nocore",
            SolverChoice::ExactPipeline => "exact-pipeline",
            SolverChoice::Oracle => "oracle",
        }
    }
}

impl fmt::Display for SolverChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown solver `{0}` (expected peel, drp-ls, drp-exact, drp-nocore, exact-pipeline or oracle)")]
pub struct UnknownSolver(pub String);

impl FromStr for SolverChoice {
    type Err = UnknownSolver;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SolverChoice::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| UnknownSolver(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSettings {
    pub config: ConfigName,
    pub solver: SolverChoice,
    pub time_limit: Duration,
    pub seed: u64,
    /// Peel and local search iteration caps for DRP runs.
    pub drp_work_limits: Option<(u64, u64)>,
}

impl RunSettings {
    pub fn new(config: ConfigName, solver: SolverChoice, time_limit: Duration, seed: u64) -> Self {
        RunSettings {
            config,
            solver,
            time_limit,
            seed,
            drp_work_limits: None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RunError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Lift(#[from] TransformError),
    #[error("time limit must be positive")]
    ZeroTimeLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub record: RunRecord,
    pub solution: Solution,
}

struct Solved {
    solution: Solution,
    time_to_best: f64,
    proven_optimal: bool,
}

fn drp_params(settings: &RunSettings, preset: DrpPreset) -> DrpParams {
    let p = DrpParams::preset(preset)
        .with_time_limit(settings.time_limit)
        .with_seed(settings.seed);
    match settings.drp_work_limits {
        Some((peels, iters)) => p.with_work_limits(peels, iters),
        None => p,
    }
}

fn dispatch(g: &WeightedGraph, settings: &RunSettings, clock: Instant) -> Result<Solved, RunError> {
    let preset = match settings.solver {
        SolverChoice::Peel => {
            let cfg = PeelConfig {
                seed: settings.seed,
                ..PeelConfig::default()
            }
            .with_reduction(ReductionConfig::named(settings.config));
            let solution = red_w2pack(g, &cfg);
            return Ok(Solved {
                solution,
                time_to_best: clock.elapsed().as_secs_f64(),
                proven_optimal: false,
            });
        }
        SolverChoice::Oracle => {
            let (_, vs) = brute_mw2ps(&LinkGraph::from_graph(g.clone()), OracleBudget::default())?;
            return Ok(Solved {
                solution: Solution::on_graph(g, vs),
                time_to_best: clock.elapsed().as_secs_f64(),
                proven_optimal: true,
            });
        }
        SolverChoice::ExactPipeline => {
            let (inst, ri, _) = reduce_and_transform(g.clone(), settings.config, settings.seed);
            let remaining = settings
                .time_limit
                .saturating_sub(clock.elapsed())
                .max(Duration::from_millis(1));
            let spec = MwisSolverSpec::new(MwisSolverKind::ExactBB, remaining, settings.seed);
            let res = exact_mwis_bb(&inst.graph, &spec);
            let solution = lift(&inst, res.solution.vertices(), &ri)?;
            return Ok(Solved {
                solution,
                time_to_best: clock.elapsed().as_secs_f64(),
                proven_optimal: res.proven_optimal,
            });
        }
        SolverChoice::DrpLs => DrpPreset::BChils,
        SolverChoice::DrpExact => DrpPreset::KaMIS,
        SolverChoice::DrpNoCore => DrpPreset::NoCore,
    };
    let res = drp(g, &drp_params(settings, preset));
    Ok(Solved {
        solution: res.solution,
        time_to_best: res.time_to_best,
        proven_optimal: res.kernel_size == 0,
    })
}

/// Runs one solver on `g`. Kernel figures describe the reduction of `g` under
/// `settings.config` and are measured before the timed run. The record's
/// weight is recomputed from the input weights and `verified` is set only when
/// the solution is a 2-packing set of `g`.
pub fn run_once(g: &WeightedGraph, instance: &str, settings: &RunSettings) -> Result<RunOutput, RunError> {
    if settings.time_limit.is_zero() {
        return Err(RunError::ZeroTimeLimit);
    }
    let (_, _, stats) = reduce_and_transform(g.clone(), settings.config, settings.seed);
    mem::reset_peak();
    let clock = Instant::now();
    let solved = dispatch(g, settings, clock)?;
    let total_seconds = clock.elapsed().as_secs_f64();
    let peak_bytes = mem::peak_bytes();
    let vertices = solved.solution.vertices();
    let in_range = vertices.iter().all(|&v| v < g.n());
    let verified = in_range && is_2packing(g, vertices);
    let weight = if in_range { g.weight_of(vertices) } else { 0 };
    let record = RunRecord {
        instance: instance.to_string(),
        config: settings.config.as_str().to_string(),
        solver: settings.solver.as_str().to_string(),
        seed: settings.seed,
        weight,
        time_to_best: solved.time_to_best.min(total_seconds),
        total_seconds,
        peak_bytes,
        n_kernel: stats.n_k2,
        m_kernel_square: stats.m_k2,
        offset: stats.offset,
        fully_reduced: stats.fully_reduced,
        verified,
        proven_optimal: solved.proven_optimal && verified,
    };
    Ok(RunOutput {
        record,
        solution: solved.solution,
    })
}
