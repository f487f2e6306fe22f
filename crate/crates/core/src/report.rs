//! Graph dumps: JSON (round-trippable), Graphviz DOT and plain text.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::field_of_order;
use crate::graph::GrassmannGraph;
use crate::matrix::FqMatrix;
use crate::subspace::canonicalize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphParams {
    pub q: u64,
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub id: usize,
    /// One string of base-36 digits per basis row.
    pub matrix: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDump {
    pub params: GraphParams,
    pub vertices: Vec<VertexEntry>,
    /// Each edge once, as `[u, v]` with `u < v`.
    pub edges: Vec<[usize; 2]>,
}

impl GraphDump {
    pub fn from_graph(g: &GrassmannGraph) -> Self {
        GraphDump {
            params: GraphParams { q: g.q() as u64, n: g.n(), m: g.m() },
            vertices: g
                .vertices()
                .iter()
                .enumerate()
                .map(|(id, s)| VertexEntry { id, matrix: s.digit_rows() })
                .collect(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    /// Rebuilds the graph exactly as dumped. Vertex matrices must already be
    /// in reduced form and ids must be `0..len` in order.
    pub fn to_graph(&self) -> Result<GrassmannGraph> {
        let GraphParams { q, n, m } = self.params;
        let spec = field_of_order(q)?;
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (i, entry) in self.vertices.iter().enumerate() {
            if entry.id != i {
                return Err(Error::Parse(format!("vertex {i} has id {}", entry.id)));
            }
            let rows = entry
                .matrix
                .iter()
                .map(|r| {
                    r.chars()
                        .map(|c| c.to_digit(36).ok_or_else(|| Error::Parse(format!("bad digit {c:?} in vertex {i}"))))
                        .collect::<Result<Vec<u32>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let matrix = FqMatrix::from_rows(&spec, &rows)?;
            let s = canonicalize(&matrix);
            if s.basis() != &matrix {
                return Err(Error::Parse(format!("vertex {i} is not in reduced form")));
            }
            vertices.push(s);
        }
        let v = vertices.len();
        let mut adjacency = vec![BitSet::new(v); v];
        for &[a, b] in &self.edges {
            if a >= v || b >= v || a == b {
                return Err(Error::Parse(format!("bad edge [{a}, {b}]")));
            }
            adjacency[a].insert(b);
            adjacency[b].insert(a);
        }
        GrassmannGraph::from_parts(&spec, n, m, vertices, adjacency)
    }
}

pub fn to_dot(g: &GrassmannGraph) -> String {
    let mut out = format!("graph \"J_{}({},{})\" {{\n", g.q(), g.n(), g.m());
    for (id, s) in g.vertices().iter().enumerate() {
        writeln!(out, "  v{id} [tooltip=\"{}\"];", s.digit_rows().join("\\n")).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  v{u} -- v{v};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn to_text(g: &GrassmannGraph) -> String {
    let mut out =
        format!("J_{}({},{}): {} vertices, {} edges\n", g.q(), g.n(), g.m(), g.vertex_count(), g.edge_count());
    for (id, s) in g.vertices().iter().enumerate() {
        let nb: Vec<String> = g.neighbours(id).iter().map(|w| w.to_string()).collect();
        writeln!(out, "{id}\t{}\t{}", s.digit_rows().join("/"), nb.join(" ")).unwrap();
    }
    out
}
