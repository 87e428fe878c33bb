use serde::{Deserialize, Serialize};

use crate::graph::{Vertex, Weight, WeightedGraph};

/// A vertex set (ascending, duplicate-free) with its cached weight.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Solution {
    vertices: Vec<Vertex>,
    weight: Weight,
}

impl Solution {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a solution, weighing each member with `w`.
    pub fn from_vertices(mut vertices: Vec<Vertex>, w: impl Fn(Vertex) -> Weight) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        let weight = vertices.iter().map(|&v| w(v)).sum();
        Solution { vertices, weight }
    }

    pub fn on_graph(g: &WeightedGraph, vertices: Vec<Vertex>) -> Self {
        Self::from_vertices(vertices, |v| g.weight(v))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.vertices
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}
