pub mod bench;
pub mod drp;
pub mod generators;
pub mod graph;
pub mod link_graph;
pub mod mem;
pub mod mwis;
pub mod oracle;
pub mod peel;
pub mod reductions;
pub mod solution;
pub mod transform;

pub use graph::{GraphError, Vertex, Weight, WeightedGraph};
pub use link_graph::LinkGraph;
pub use solution::Solution;
pub use transform::{lift, reduce_and_transform, square, MwisInstance};
