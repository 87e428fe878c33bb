//! Immutable vertex-weighted undirected graph.

use thiserror::Error;

/// Vertex identifier. Vertices of a graph with `n` vertices are `0..n`.
pub type Vertex = usize;

/// Vertex weights are non-negative integers.
pub type Weight = u64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(Vertex, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("asymmetric adjacency: {0} lists {1} but not vice versa")]
    Asymmetric(Vertex, Vertex),
    #[error("weight vector has length {0}, expected {1}")]
    WeightCount(usize, usize),
}

/// Undirected graph `G = (V, E, w)` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    adj: Vec<Vec<Vertex>>,
    weights: Vec<Weight>,
    m: usize,
}

impl WeightedGraph {
    /// Builds a graph from an edge list. Edges may be given in either orientation
    /// but each undirected edge at most once.
    pub fn from_edges(
        n: usize,
        edges: &[(Vertex, Vertex)],
        weights: Vec<Weight>,
    ) -> Result<Self, GraphError> {
        if weights.len() != n {
            return Err(GraphError::WeightCount(weights.len(), n));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(v.min(w[0]), v.max(w[0])));
            }
        }
        Ok(WeightedGraph {
            m: edges.len(),
            adj,
            weights,
        })
    }

    /// Builds a graph from per-vertex neighbor lists, validating symmetry.
    pub fn from_adjacency(
        mut adj: Vec<Vec<Vertex>>,
        weights: Vec<Weight>,
    ) -> Result<Self, GraphError> {
        let n = adj.len();
        if weights.len() != n {
            return Err(GraphError::WeightCount(weights.len(), n));
        }
        let mut half = 0usize;
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            for w in list.windows(2) {
                if w[0] == w[1] {
                    return Err(GraphError::DuplicateEdge(v.min(w[0]), v.max(w[0])));
                }
            }
            for &u in list.iter() {
                if u >= n {
                    return Err(GraphError::VertexOutOfRange(u, n));
                }
                if u == v {
                    return Err(GraphError::SelfLoop(v));
                }
            }
            half += list.len();
        }
        for v in 0..n {
            for &u in &adj[v] {
                if adj[u].binary_search(&v).is_err() {
                    return Err(GraphError::Asymmetric(v, u));
                }
            }
        }
        Ok(WeightedGraph {
            m: half / 2,
            adj,
            weights,
        })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize, weights: Vec<Weight>) -> Result<Self, GraphError> {
        Self::from_edges(n, &[], weights)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Sorted open neighborhood `N(v)`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn weight(&self, v: Vertex) -> Weight {
        self.weights[v]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// `w(U)`.
    pub fn weight_of(&self, set: &[Vertex]) -> Weight {
        set.iter().map(|&v| self.weights[v]).sum()
    }

    /// Same topology, new weights.
    pub fn with_weights(&self, weights: Vec<Weight>) -> Result<Self, GraphError> {
        if weights.len() != self.n() {
            return Err(GraphError::WeightCount(weights.len(), self.n()));
        }
        Ok(WeightedGraph {
            adj: self.adj.clone(),
            weights,
            m: self.m,
        })
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_path() {
        let g = WeightedGraph::from_edges(4, &[(0, 1), (2, 1), (2, 3)], vec![1; 4]).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            WeightedGraph::from_edges(2, &[(0, 0)], vec![1; 2]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            WeightedGraph::from_edges(2, &[(0, 1), (1, 0)], vec![1; 2]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            WeightedGraph::from_adjacency(vec![vec![1], vec![]], vec![1; 2]),
            Err(GraphError::Asymmetric(0, 1))
        );
        assert!(matches!(
            WeightedGraph::from_edges(2, &[], vec![1]),
            Err(GraphError::WeightCount(1, 2))
        ));
    }
}
