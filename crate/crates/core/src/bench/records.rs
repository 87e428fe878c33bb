//! Per-run result records, stored as JSON lines.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Weight;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub config: String,
    pub solver: String,
    pub seed: u64,
    pub weight: Weight,
    pub time_to_best: f64,
    pub total_seconds: f64,
    /// Peak heap bytes, when the counting allocator is installed.
    pub peak_bytes: Option<usize>,
    /// Vertices of the reduced instance `𝒦` under `config`.
    pub n_kernel: usize,
    /// Edges of `𝒦²`.
    pub m_kernel_square: usize,
    pub offset: Weight,
    pub fully_reduced: bool,
    /// Set only after the solution passed the 2-packing check on the input.
    pub verified: bool,
    pub proven_optimal: bool,
}

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn write_records<W: Write>(mut out: W, records: &[RunRecord]) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Reads JSON-lines records, skipping blank lines.
pub fn read_records<R: BufRead>(input: R) -> Result<Vec<RunRecord>, RecordError> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(&line).map_err(|source| RecordError::Json { line: i + 1, source })?,
        );
    }
    Ok(out)
}

/// Geometric mean; 0 when any value is 0, and 0 for an empty slice.
pub fn geometric_mean(values: &[f64]) -> f64 {
    if values.is_empty() || values.iter().any(|&x| x <= 0.0) {
        return 0.0;
    }
    if values.iter().all(|&x| x == values[0]) {
        return values[0];
    }
    (values.iter().map(|x| x.ln()).sum::<f64>() / values.len() as f64).exp()
}

/// Geometric means over the runs of one instance and solver.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub runs: usize,
    pub weight: f64,
    pub time_to_best: f64,
    pub total_seconds: f64,
    pub peak_bytes: Option<f64>,
    pub all_verified: bool,
}

pub fn summarize(records: &[RunRecord]) -> Summary {
    let col = |f: &dyn Fn(&RunRecord) -> f64| records.iter().map(f).collect::<Vec<_>>();
    let peaks: Option<Vec<f64>> = records
        .iter()
        .map(|r| r.peak_bytes.map(|b| b as f64))
        .collect();
    Summary {
        runs: records.len(),
        weight: geometric_mean(&col(&|r| r.weight as f64)),
        time_to_best: geometric_mean(&col(&|r| r.time_to_best)),
        total_seconds: geometric_mean(&col(&|r| r.total_seconds)),
        peak_bytes: peaks.filter(|p| !p.is_empty()).map(|p| geometric_mean(&p)),
        all_verified: records.iter().all(|r| r.verified),
    }
}

#[cfg(test)]
pub(crate) fn record(instance: &str, solver: &str, seed: u64, weight: Weight, time: f64) -> RunRecord {
    RunRecord {
        instance: instance.into(),
        config: "strong".into(),
        solver: solver.into(),
        seed,
        weight,
        time_to_best: time,
        total_seconds: time,
        peak_bytes: Some(1000),
        n_kernel: 0,
        m_kernel_square: 0,
        offset: 0,
        fully_reduced: false,
        verified: true,
        proven_optimal: false,
    }
}
