//! Performance profiles over solution quality, time to best and peak memory.
//!
//! The ratio of solver `s` on an instance is `x_s / x*`, where `x*` is the
//! largest weight (quality) or the smallest value (time, memory) over all
//! solvers on that instance. `foi(τ)` is the fraction of
//! instances with ratio `≥ τ` (quality, `τ ≤ 1`) or `≤ τ` (time and memory,
//! `τ ≥ 1`). Repeated seeds are aggregated by geometric mean first.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::records::{geometric_mean, RunRecord};

/// Times below this many seconds count as equal.
pub const TIME_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Metric {
    Quality,
    Time,
    Memory,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Quality => "quality",
            Metric::Time => "time",
            Metric::Memory => "memory",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProfileError {
    #[error("need at least two solvers, found {0}")]
    TooFewSolvers(usize),
    #[error("solver `{solver}` has instances {found:?}, expected {expected:?}")]
    MismatchedInstances {
        solver: String,
        expected: Vec<String>,
        found: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfilePoint {
    pub metric: Metric,
    pub solver: String,
    pub tau: f64,
    pub foi: f64,
}

type Table = BTreeMap<String, BTreeMap<String, Vec<f64>>>;

fn table(records: &[RunRecord], value: impl Fn(&RunRecord) -> Option<f64>) -> Option<Table> {
    let mut t: Table = BTreeMap::new();
    for r in records {
        t.entry(r.solver.clone())
            .or_default()
            .entry(r.instance.clone())
            .or_default()
            .push(value(r)?);
    }
    Some(t)
}

fn ratios(t: &Table, metric: Metric) -> BTreeMap<String, Vec<f64>> {
    let means: BTreeMap<&String, BTreeMap<&String, f64>> = t
        .iter()
        .map(|(s, per)| (s, per.iter().map(|(i, v)| (i, geometric_mean(v))).collect()))
        .collect();
    let instances: Vec<&String> = means.values().next().unwrap().keys().copied().collect();
    let mut out: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for inst in instances {
        let vals: Vec<f64> = means.values().map(|m| m[inst]).collect();
        match metric {
            Metric::Quality => {
                let best = vals.iter().copied().fold(0.0, f64::max);
                for (s, v) in means.keys().zip(&vals) {
                    let r = if best == 0.0 { 1.0 } else { v / best };
                    out.entry((*s).clone()).or_default().push(r);
                }
            }
            Metric::Time | Metric::Memory => {
                let floor = if metric == Metric::Time { TIME_FLOOR } else { 1.0 };
                let best = vals.iter().map(|v| v.max(floor)).fold(f64::INFINITY, f64::min);
                for (s, v) in means.keys().zip(&vals) {
                    out.entry((*s).clone()).or_default().push(v.max(floor) / best);
                }
            }
        }
    }
    out
}

fn step_points(metric: Metric, ratios: &BTreeMap<String, Vec<f64>>) -> Vec<ProfilePoint> {
    let mut taus: Vec<f64> = ratios.values().flatten().copied().chain([1.0]).collect();
    taus.sort_by(f64::total_cmp);
    taus.dedup();
    if metric == Metric::Quality {
        taus.reverse();
    }
    let mut out = Vec::new();
    for (solver, rs) in ratios {
        let total = rs.len() as f64;
        for &tau in &taus {
            let hits = match metric {
                Metric::Quality => rs.iter().filter(|&&r| r >= tau).count(),
                _ => rs.iter().filter(|&&r| r <= tau).count(),
            };
            out.push(ProfilePoint {
                metric,
                solver: solver.clone(),
                tau,
                foi: hits as f64 / total,
            });
        }
    }
    out
}

/// Step points of every metric. The memory profile is left out when some
/// record has no peak memory figure.
pub fn performance_profiles(records: &[RunRecord]) -> Result<Vec<ProfilePoint>, ProfileError> {
    let weights = table(records, |r| Some(r.weight as f64)).expect("weights always present");
    if weights.len() < 2 {
        return Err(ProfileError::TooFewSolvers(weights.len()));
    }
    let mut solvers = weights.iter();
    let (_, first) = solvers.next().unwrap();
    let expected: Vec<String> = first.keys().cloned().collect();
    for (solver, per) in solvers {
        let found: Vec<String> = per.keys().cloned().collect();
        if found != expected {
            return Err(ProfileError::MismatchedInstances {
                solver: solver.clone(),
                expected,
                found,
            });
        }
    }
    let mut out = step_points(Metric::Quality, &ratios(&weights, Metric::Quality));
    let times = table(records, |r| Some(r.time_to_best)).expect("times always present");
    out.extend(step_points(Metric::Time, &ratios(&times, Metric::Time)));
    if let Some(mem) = table(records, |r| r.peak_bytes.map(|b| b as f64)) {
        out.extend(step_points(Metric::Memory, &ratios(&mem, Metric::Memory)));
    }
    Ok(out)
}

/// CSV with header `metric,solver,tau,foi` and six decimals.
pub fn profiles_csv(points: &[ProfilePoint]) -> String {
    let mut out = String::from("metric,solver,tau,foi\n");
    for p in points {
        writeln!(out, "{},{},{:.6},{:.6}", p.metric.as_str(), p.solver, p.tau, p.foi).unwrap();
    }
    out
}

/// Profiles of `records` as CSV.
pub fn emit_performance_profiles(records: &[RunRecord]) -> Result<String, ProfileError> {
    Ok(profiles_csv(&performance_profiles(records)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::records::record;

    fn at(points: &[ProfilePoint], metric: Metric, solver: &str, tau: f64) -> f64 {
        points
            .iter()
            .find(|p| p.metric == metric && p.solver == solver && p.tau == tau)
            .unwrap()
            .foi
    }

    #[test]
    fn dominating_solver() {
        let rs = vec![
            record("a", "x", 0, 10, 1.0),
            record("b", "x", 0, 20, 1.0),
            record("a", "y", 0, 5, 2.0),
            record("b", "y", 0, 10, 4.0),
        ];
        let p = performance_profiles(&rs).unwrap();
        assert_eq!(at(&p, Metric::Quality, "x", 1.0), 1.0);
        assert_eq!(at(&p, Metric::Quality, "y", 1.0), 0.0);
        assert_eq!(at(&p, Metric::Quality, "y", 0.5), 1.0);
        assert_eq!(at(&p, Metric::Time, "x", 1.0), 1.0);
        assert_eq!(at(&p, Metric::Time, "y", 2.0), 0.5);
        assert_eq!(at(&p, Metric::Time, "y", 4.0), 1.0);
    }

    #[test]
    fn disjoint_wins() {
        let rs = vec![
            record("a", "x", 0, 10, 1.0),
            record("b", "x", 0, 5, 1.0),
            record("a", "y", 0, 5, 1.0),
            record("b", "y", 0, 10, 1.0),
        ];
        let p = performance_profiles(&rs).unwrap();
        assert_eq!(at(&p, Metric::Quality, "x", 1.0), 0.5);
        assert_eq!(at(&p, Metric::Quality, "y", 1.0), 0.5);
    }

    #[test]
    fn seeds_are_aggregated_by_geometric_mean() {
        let rs = vec![
            record("a", "x", 0, 2, 1.0),
            record("a", "x", 1, 8, 1.0),
            record("a", "y", 0, 4, 1.0),
        ];
        let p = performance_profiles(&rs).unwrap();
        assert_eq!(at(&p, Metric::Quality, "x", 1.0), 1.0);
        assert_eq!(at(&p, Metric::Quality, "y", 1.0), 1.0);
    }

    #[test]
    fn errors() {
        let one = vec![record("a", "x", 0, 1, 1.0)];
        assert_eq!(performance_profiles(&one), Err(ProfileError::TooFewSolvers(1)));
        let mismatched = vec![record("a", "x", 0, 1, 1.0), record("b", "y", 0, 1, 1.0)];
        assert!(matches!(
            performance_profiles(&mismatched),
            Err(ProfileError::MismatchedInstances { .. })
        ));
    }

    #[test]
    fn memory_profile_needs_every_peak() {
        let mut rs = vec![record("a", "x", 0, 1, 1.0), record("a", "y", 0, 1, 1.0)];
        assert!(performance_profiles(&rs).unwrap().iter().any(|p| p.metric == Metric::Memory));
        rs[0].peak_bytes = None;
        assert!(performance_profiles(&rs).unwrap().iter().all(|p| p.metric != Metric::Memory));
    }

    #[test]
    fn golden_csv() {
        let rs = vec![
            record("a", "x", 0, 10, 1.0),
            record("b", "x", 0, 5, 0.0),
            record("a", "y", 0, 8, 3.0),
            record("b", "y", 0, 10, 0.5),
        ];
        let golden = "metric,solver,tau,foi\n\
quality,x,1.000000,0.500000\n\
quality,x,0.800000,0.500000\n\
quality,x,0.500000,1.000000\n\
quality,y,1.000000,0.500000\n\
quality,y,0.800000,1.000000\n\
quality,y,0.500000,1.000000\n\
time,x,1.000000,1.000000\n\
time,x,3.000000,1.000000\n\
time,x,500000.000000,1.000000\n\
time,y,1.000000,0.000000\n\
time,y,3.000000,0.500000\n\
time,y,500000.000000,1.000000\n\
memory,x,1.000000,1.000000\n\
memory,y,1.000000,1.000000\n";
        assert_eq!(emit_performance_profiles(&rs).unwrap(), golden);
    }
}
