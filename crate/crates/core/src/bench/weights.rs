//! Vertex weight generators for benchmark instances.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Weight, WeightedGraph};

/// Largest generated weight.
pub const MAX_WEIGHT: Weight = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    /// All weights 1.
    Unit,
    /// Uniform integers in `[1, 200]`.
    Uniform,
    /// Geometric with success probability 1/2, clamped to `[1, 200]`.
    Geometric,
    /// `deg(v) + 1`.
    Degree,
    /// `(v mod 200) + 1`.
    Hybrid,
    /// Weights stored in the graph file.
    File,
}

impl WeightKind {
    pub const ALL: [WeightKind; 6] = [
        WeightKind::Unit,
        WeightKind::Uniform,
        WeightKind::Geometric,
        WeightKind::Degree,
        WeightKind::Hybrid,
        WeightKind::File,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            WeightKind::Unit => "unit",
            WeightKind::Uniform => "uniform",
            WeightKind::Geometric => "geometric",
            WeightKind::Degree => "degree",
            WeightKind::Hybrid => "hybrid",
            WeightKind::File => "file",
        }
    }
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("unknown weight kind `{0}` (expected unit, uniform, geometric, degree, hybrid or file)")]
    Unknown(String),
    #[error("weight kind `file` needs a graph file with vertex weights")]
    NoFileWeights,
}

impl FromStr for WeightKind {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        WeightKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| WeightError::Unknown(s.to_string()))
    }
}

/// Returns `g` reweighted by `kind`. `has_file_weights` says whether the
/// current weights came from the input file.
pub fn generate_weights(
    g: &WeightedGraph,
    kind: WeightKind,
    seed: u64,
    has_file_weights: bool,
) -> Result<WeightedGraph, WeightError> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w: Vec<Weight> = match kind {
        WeightKind::File => {
            if !has_file_weights {
                return Err(WeightError::NoFileWeights);
            }
            return Ok(g.clone());
        }
        WeightKind::Unit => vec![1; n],
        WeightKind::Uniform => (0..n).map(|_| rng.gen_range(1..=MAX_WEIGHT)).collect(),
        WeightKind::Geometric => {
            let dist = Geometric::new(0.5).expect("valid probability");
            (0..n)
                .map(|_| (dist.sample(&mut rng) + 1).min(MAX_WEIGHT))
                .collect()
        }
        WeightKind::Degree => (0..n).map(|v| g.degree(v) as Weight + 1).collect(),
        WeightKind::Hybrid => (0..n).map(|v| (v as Weight % MAX_WEIGHT) + 1).collect(),
    };
    Ok(g.with_weights(w).expect("one weight per vertex"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn formulas() {
        let star = generators::star(3);
        let d = generate_weights(&star, WeightKind::Degree, 0, false).unwrap();
        assert_eq!(d.weights(), &[4, 2, 2, 2]);
        let g = generators::path(450).with_weights(vec![9; 450]).unwrap();
        assert!(generate_weights(&g, WeightKind::Unit, 0, false).unwrap().weights().iter().all(|&w| w == 1));
        let h = generate_weights(&g, WeightKind::Hybrid, 0, false).unwrap();
        assert_eq!((h.weight(0), h.weight(199), h.weight(200)), (1, 200, 1));
        assert_eq!(generate_weights(&g, WeightKind::File, 0, true).unwrap(), g);
        assert_eq!(
            generate_weights(&g, WeightKind::File, 0, false),
            Err(WeightError::NoFileWeights)
        );
    }

    #[test]
    fn random_kinds_are_seeded_and_in_range() {
        let g = generators::path(1000);
        for kind in [WeightKind::Uniform, WeightKind::Geometric] {
            let a = generate_weights(&g, kind, 5, false).unwrap();
            assert_eq!(a, generate_weights(&g, kind, 5, false).unwrap());
            assert_ne!(a, generate_weights(&g, kind, 6, false).unwrap());
            assert!(a.weights().iter().all(|&w| (1..=MAX_WEIGHT).contains(&w)));
        }
        let geo = generate_weights(&g, WeightKind::Geometric, 1, false).unwrap();
        let ones = geo.weights().iter().filter(|&&w| w == 1).count();
        assert!((400..600).contains(&ones), "about half should be 1, got {ones}");
    }

    #[test]
    fn parse_names() {
        for k in WeightKind::ALL {
            assert_eq!(k.as_str().parse::<WeightKind>().unwrap(), k);
        }
        assert!("heavy".parse::<WeightKind>().is_err());
    }
}
