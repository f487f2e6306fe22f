//! The Grassmann graph `J_q(n, m)`: vertices are the m-dimensional subspaces
//! of F_q^n, adjacent when they meet in dimension m - 1.

use std::collections::{HashMap, VecDeque};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::stack_rank;
use crate::subspace::{enumerate_subspaces, subspace_count, subspaces_between, Subspace};

#[derive(Debug, Clone)]
pub struct GrassmannGraph {
    spec: FieldSpec,
    n: usize,
    m: usize,
    vertices: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
    adjacency: Vec<BitSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CliqueKind {
    Star,
    Top,
}

/// A star `[P>_m` (all vertices containing P) or a top `<Q]_m` (all vertices
/// inside Q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalClique {
    pub kind: CliqueKind,
    pub center: Subspace,
    pub members: BitSet,
}

fn check_params(spec: &FieldSpec, n: usize, m: usize, bounds: &Bounds) -> Result<u64> {
    if !(1 <= m && m < n) {
        return Err(Error::InvalidParameters(format!("need 1 <= m < n, got n={n}, m={m}")));
    }
    if spec.q() > bounds.max_graph_q {
        return Err(Error::InvalidParameters(format!(
            "q = {} exceeds the graph-building field bound {}",
            spec.q(),
            bounds.max_graph_q
        )));
    }
    let count = subspace_count(spec.q() as u64, n, m);
    let count_u64 = count
        .to_u64()
        .filter(|&c| c <= bounds.max_subspaces)
        .ok_or(Error::EnumerationTooLarge { count: count.to_string(), bound: bounds.max_subspaces })?;
    if count_u64 > bounds.max_vertices {
        return Err(Error::GraphTooLarge { count: count_u64, bound: bounds.max_vertices });
    }
    Ok(count_u64)
}

/// Builds `J_q(n, m)` with vertices in canonical enumeration order.
pub fn build_graph(spec: &FieldSpec, n: usize, m: usize, bounds: &Bounds) -> Result<GrassmannGraph> {
    check_params(spec, n, m, bounds)?;
    let vertices = enumerate_subspaces(spec, n, m, bounds.max_subspaces)?;
    let v = vertices.len();
    let neighbour_lists: Vec<Vec<usize>> = (0..v)
        .into_par_iter()
        .map(|i| {
            (i + 1..v).filter(|&j| vertices[i].intersection_dim(&vertices[j]).expect("same ambient") == m - 1).collect()
        })
        .collect();
    let mut adjacency = vec![BitSet::new(v); v];
    for (i, list) in neighbour_lists.into_iter().enumerate() {
        for j in list {
            adjacency[i].insert(j);
            adjacency[j].insert(i);
        }
    }
    let index = vertices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    Ok(GrassmannGraph { spec: spec.clone(), n, m, vertices, index, adjacency })
}

impl GrassmannGraph {
    /// Reassembles a graph from stored vertices and adjacency, e.g. a JSON dump.
    pub fn from_parts(
        spec: &FieldSpec,
        n: usize,
        m: usize,
        vertices: Vec<Subspace>,
        adjacency: Vec<BitSet>,
    ) -> Result<Self> {
        if vertices.len() != adjacency.len() || adjacency.iter().any(|a| a.capacity() != vertices.len()) {
            return Err(Error::DimensionMismatch("adjacency does not match vertex count".into()));
        }
        if vertices.iter().any(|s| s.dim() != m || s.ambient() != n || s.spec() != spec) {
            return Err(Error::DimensionMismatch(format!("vertex is not a {m}-subspace of F^{n}")));
        }
        let index: HashMap<Subspace, usize> = vertices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        if index.len() != vertices.len() {
            return Err(Error::InvalidParameters("duplicate vertices".into()));
        }
        Ok(GrassmannGraph { spec: spec.clone(), n, m, vertices, index, adjacency })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> u32 {
        self.spec.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Subspace] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &Subspace {
        &self.vertices[id]
    }

    pub fn id_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn adjacency(&self) -> &[BitSet] {
        &self.adjacency
    }

    pub fn neighbours(&self, v: usize) -> &BitSet {
        &self.adjacency[v]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BitSet::count).sum::<usize>() / 2
    }

    fn check_id(&self, v: usize) -> Result<()> {
        if v >= self.vertices.len() {
            return Err(Error::InvalidParameters(format!("vertex id {v} out of range")));
        }
        Ok(())
    }

    /// `m - dim(X ∩ Y)`.
    pub fn distance(&self, x: usize, y: usize) -> Result<usize> {
        self.check_id(x)?;
        self.check_id(y)?;
        Ok(self.m - self.vertices[x].intersect(&self.vertices[y])?.dim())
    }

    /// Adjacency recomputed from the rank of the stacked bases.
    pub fn adjacent_by_rank(&self, x: usize, y: usize) -> bool {
        stack_rank(self.vertices[x].basis(), self.vertices[y].basis()).expect("same ambient") == self.m + 1
    }

    /// Breadth-first distances from `src`; `None` when unreachable.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices are reached");
            for w in self.adjacency[u].iter() {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_clique(&self, members: &[usize]) -> bool {
        members.iter().enumerate().all(|(i, &u)| members[i + 1..].iter().all(|&v| u != v && self.adjacent(u, v)))
    }

    pub fn star(&self, p: &Subspace) -> Result<MaximalClique> {
        self.clique_around(CliqueKind::Star, p)
    }

    pub fn top(&self, q: &Subspace) -> Result<MaximalClique> {
        self.clique_around(CliqueKind::Top, q)
    }

    fn clique_around(&self, kind: CliqueKind, center: &Subspace) -> Result<MaximalClique> {
        let expected = match kind {
            CliqueKind::Star => self.m - 1,
            CliqueKind::Top => self.m + 1,
        };
        if center.dim() != expected || center.ambient() != self.n {
            return Err(Error::WrongCenterDimension { expected, got: center.dim() });
        }
        let (lower, upper) = match kind {
            CliqueKind::Star => (center.clone(), Subspace::full(&self.spec, self.n)),
            CliqueKind::Top => (Subspace::zero(&self.spec, self.n), center.clone()),
        };
        let mut members = BitSet::new(self.vertex_count());
        for x in subspaces_between(&lower, &upper, self.m)? {
            members.insert(self.id_of(&x).ok_or_else(|| Error::Invariant(format!("{x} is not a vertex")))?);
        }
        Ok(MaximalClique { kind, center: center.clone(), members })
    }

    /// Every star, in canonical order of centers.
    pub fn star_catalog(&self) -> Result<Vec<MaximalClique>> {
        enumerate_subspaces(&self.spec, self.n, self.m - 1, u64::MAX)?.iter().map(|p| self.star(p)).collect()
    }

    /// Every top, in canonical order of centers.
    pub fn top_catalog(&self) -> Result<Vec<MaximalClique>> {
        enumerate_subspaces(&self.spec, self.n, self.m + 1, u64::MAX)?.iter().map(|q| self.top(q)).collect()
    }

    /// Star size `(q^(n-m+1) - 1)/(q - 1)`.
    pub fn star_size(&self) -> u64 {
        let q = self.q() as u64;
        (q.pow((self.n - self.m + 1) as u32) - 1) / (q - 1)
    }

    /// Top size `(q^(m+1) - 1)/(q - 1)`.
    pub fn top_size(&self) -> u64 {
        let q = self.q() as u64;
        (q.pow((self.m + 1) as u32) - 1) / (q - 1)
    }

    /// Clique number from the star/top sizes.
    pub fn omega_formula(&self) -> u64 {
        self.star_size().max(self.top_size())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn graph(q: u64, n: usize, m: usize) -> GrassmannGraph {
        build_graph(&crate::field::field_of_order(q).unwrap(), n, m, &Bounds::default()).unwrap()
    }

    #[test]
    fn j2_4_2_is_regular_of_degree_18() {
        let g = graph(2, 4, 2);
        assert_eq!(g.vertex_count(), 35);
        assert!((0..35).all(|v| g.degree(v) == 18));
        assert!((0..35).all(|v| !g.adjacent(v, v)));
    }

    #[test]
    fn m1_is_complete() {
        let g = graph(3, 3, 1);
        assert_eq!(g.vertex_count(), 13);
        assert_eq!(g.edge_count(), 13 * 12 / 2);
    }

    #[test]
    fn distance_basics() {
        let g = graph(2, 4, 2);
        assert_eq!(g.distance(3, 3).unwrap(), 0);
        let nb = g.neighbours(0).first().unwrap();
        assert_eq!(g.distance(0, nb).unwrap(), 1);
        assert!(g.distance(0, 35).is_err());
    }

    #[test]
    fn bad_params() {
        let f2 = make_field(2, 1).unwrap();
        let b = Bounds::default();
        assert!(matches!(build_graph(&f2, 4, 4, &b), Err(Error::InvalidParameters(_))));
        assert!(matches!(build_graph(&f2, 4, 0, &b), Err(Error::InvalidParameters(_))));
        assert!(matches!(build_graph(&f2, 10, 5, &b), Err(Error::EnumerationTooLarge { .. })));
        let tight = Bounds { max_vertices: 10, ..b };
        assert!(matches!(build_graph(&f2, 4, 2, &tight), Err(Error::GraphTooLarge { .. })));
        let f17 = make_field(17, 1).unwrap();
        assert!(build_graph(&f17, 2, 1, &b).is_err());
    }

    #[test]
    fn star_and_top_sizes() {
        let g = graph(2, 5, 2);
        let stars = g.star_catalog().unwrap();
        let tops = g.top_catalog().unwrap();
        assert_eq!((stars.len(), tops.len()), (31, 155));
        assert!(stars.iter().all(|s| s.members.count() == 15));
        assert!(tops.iter().all(|t| t.members.count() == 7));
        let wrong = g.vertex(0).clone();
        assert!(matches!(g.star(&wrong), Err(Error::WrongCenterDimension { expected: 1, got: 2 })));
        assert!(matches!(g.top(&wrong), Err(Error::WrongCenterDimension { expected: 3, got: 2 })));
    }
}
