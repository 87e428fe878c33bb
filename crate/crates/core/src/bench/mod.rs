//! Benchmark plumbing: graph files, weight generation, solver runs, result
//! records and performance profiles.

pub mod metis;
pub mod profile;
pub mod records;
pub mod runner;
pub mod weights;

pub use metis::{parse_metis, read_metis, read_solution, write_metis, write_solution, MetisError};
pub use profile::{emit_performance_profiles, performance_profiles, ProfileError};
pub use records::{read_records, summarize, write_records, RunRecord, Summary};
pub use runner::{run_once, RunError, RunOutput, RunSettings, SolverChoice};
pub use weights::{generate_weights, WeightKind};
