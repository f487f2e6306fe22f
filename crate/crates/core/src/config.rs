//! Resource bounds shared by the library and the CLI.

use serde::Serialize;

use crate::subspace::DEFAULT_ENUMERATION_BOUND;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Maximum number of subspaces a single enumeration may produce.
    pub max_subspaces: u64,
    /// Maximum vertex count for building a graph with adjacency.
    pub max_vertices: u64,
    /// Maximum vertex count for exhaustive clique enumeration and exact searches.
    pub brute_bound: usize,
    /// Maximum vertex count for the exact independence-number search.
    pub alpha_vertices: usize,
    /// Largest field order for which graphs are built.
    pub max_graph_q: u32,
    /// Node budget for each branch-and-bound or colouring search.
    pub search_nodes: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_subspaces: DEFAULT_ENUMERATION_BOUND,
            max_vertices: 20_000,
            brute_bound: 2000,
            alpha_vertices: 400,
            max_graph_q: 16,
            search_nodes: 200_000,
        }
    }
}
