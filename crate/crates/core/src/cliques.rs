//! Clique search kernels over bitset adjacency: maximal-clique enumeration
//! (Bron–Kerbosch with pivoting, degeneracy-ordered outer loop) and maximum
//! clique by branch and bound with greedy-colouring bounds.
//!
//! Everything here is sequential and breaks ties by smallest vertex id, so
//! results do not depend on thread count.

use std::collections::HashMap;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::graph::{CliqueKind, GrassmannGraph};

pub fn complement(adj: &[BitSet]) -> Vec<BitSet> {
    let n = adj.len();
    adj.iter()
        .enumerate()
        .map(|(v, nb)| {
            let mut c = BitSet::full(n);
            c.difference_with(nb);
            c.remove(v);
            c
        })
        .collect()
}

/// Vertices in degeneracy order (repeatedly remove a minimum-degree vertex).
pub fn degeneracy_order(adj: &[BitSet]) -> Vec<usize> {
    let n = adj.len();
    let mut alive = BitSet::full(n);
    let mut deg: Vec<usize> = adj.iter().map(BitSet::count).collect();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = alive.iter().min_by_key(|&v| (deg[v], v)).expect("vertices remain");
        alive.remove(v);
        for w in adj[v].iter() {
            if alive.contains(w) {
                deg[w] -= 1;
            }
        }
        order.push(v);
    }
    order
}

/// All maximal cliques, each as a member bitset, sorted.
pub fn maximal_cliques(adj: &[BitSet]) -> Vec<BitSet> {
    let n = adj.len();
    let mut out = Vec::new();
    let order = degeneracy_order(adj);
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    for &v in &order {
        let mut p = BitSet::new(n);
        let mut x = BitSet::new(n);
        for w in adj[v].iter() {
            if position[w] > position[v] {
                p.insert(w);
            } else {
                x.insert(w);
            }
        }
        let mut r = vec![v];
        bron_kerbosch(adj, &mut r, p, x, &mut out);
    }
    out.sort();
    out
}

fn bron_kerbosch(adj: &[BitSet], r: &mut Vec<usize>, mut p: BitSet, mut x: BitSet, out: &mut Vec<BitSet>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(BitSet::from_iter_with_len(adj.len(), r.iter().copied()));
        }
        return;
    }
    // Tomita pivot: maximise |P ∩ N(u)| over u in P ∪ X.
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (p.intersection_count(&adj[u]), std::cmp::Reverse(u)))
        .expect("P is nonempty");
    let mut candidates = p.clone();
    candidates.difference_with(&adj[pivot]);
    for v in candidates.iter() {
        r.push(v);
        bron_kerbosch(adj, r, p.intersection(&adj[v]), x.intersection(&adj[v]), out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// Result of a budgeted maximum-clique search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSearch {
    /// Best clique found, sorted by id.
    pub best: Vec<usize>,
    /// True when `best` is known to be maximum.
    pub proven: bool,
    pub nodes: u64,
}

struct MaxClique<'a> {
    adj: &'a [BitSet],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    target: Option<usize>,
    aborted: bool,
}

impl MaxClique<'_> {
    /// Greedy sequential colouring of `p`; returns vertices with their
    /// cumulative colour numbers, non-decreasing.
    fn colour_sort(&self, p: &BitSet) -> Vec<(usize, usize)> {
        let mut uncoloured = p.clone();
        let mut out = Vec::with_capacity(p.count());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                avail.difference_with(&self.adj[v]);
                uncoloured.remove(v);
                out.push((v, colour));
            }
        }
        out
    }

    fn done(&self) -> bool {
        self.aborted || self.target.is_some_and(|t| self.best.len() >= t)
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut p: BitSet) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let order = self.colour_sort(&p);
        for &(v, colour) in order.iter().rev() {
            if r.len() + colour <= self.best.len() || self.done() {
                return;
            }
            r.push(v);
            let next = p.intersection(&self.adj[v]);
            if next.is_empty() {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
            } else {
                self.expand(r, next);
            }
            r.pop();
            p.remove(v);
        }
    }
}

/// Maximum clique within `candidates`. `target` is a known upper bound that
/// lets the search stop early once reached.
pub fn max_clique(adj: &[BitSet], candidates: &BitSet, target: Option<usize>, budget: u64) -> CliqueSearch {
    let mut s = MaxClique { adj, best: Vec::new(), nodes: 0, budget, target, aborted: false };
    let mut r = Vec::new();
    if !candidates.is_empty() {
        s.expand(&mut r, candidates.clone());
    }
    let mut best = s.best;
    best.sort_unstable();
    let proven = !s.aborted || target.is_some_and(|t| best.len() >= t);
    CliqueSearch { best, proven, nodes: s.nodes }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusEntry {
    pub kind: Option<CliqueKind>,
    /// Canonical center of the matching star/top, rows joined by '/'.
    pub center: Option<String>,
    pub size: usize,
    pub members: Vec<usize>,
}

/// Maximal cliques found by exhaustive search, matched against the star and
/// top catalog.
#[derive(Debug, Clone, Serialize)]
pub struct CliqueCensus {
    pub total: usize,
    pub stars: usize,
    pub tops: usize,
    pub unmatched: usize,
    /// Catalog entries that were not found as maximal cliques.
    pub missing_from_search: usize,
    pub star_size: u64,
    pub top_size: u64,
    pub entries: Vec<CensusEntry>,
}

impl CliqueCensus {
    /// Every maximal clique is a star or a top, and every star and top was found.
    pub fn classification_holds(&self) -> bool {
        self.unmatched == 0 && self.missing_from_search == 0 && self.total == self.stars + self.tops
    }
}

pub fn all_maximal_cliques_bruteforce(g: &GrassmannGraph, bounds: &Bounds) -> Result<CliqueCensus> {
    if g.vertex_count() > bounds.brute_bound {
        return Err(Error::BruteBoundExceeded { count: g.vertex_count(), bound: bounds.brute_bound });
    }
    let found = maximal_cliques(g.adjacency());
    let mut catalog: HashMap<BitSet, (CliqueKind, String)> = HashMap::new();
    let mut catalog_len = 0;
    for c in g.star_catalog()?.into_iter().chain(g.top_catalog()?) {
        catalog_len += 1;
        catalog.insert(c.members, (c.kind, c.center.to_string()));
    }
    let mut entries = Vec::with_capacity(found.len());
    let (mut stars, mut tops, mut unmatched) = (0, 0, 0);
    for members in found {
        let hit = catalog.get(&members);
        match hit.map(|h| h.0) {
            Some(CliqueKind::Star) => stars += 1,
            Some(CliqueKind::Top) => tops += 1,
            None => unmatched += 1,
        }
        entries.push(CensusEntry {
            kind: hit.map(|h| h.0),
            center: hit.map(|h| h.1.clone()),
            size: members.count(),
            members: members.to_vec(),
        });
    }
    Ok(CliqueCensus {
        total: entries.len(),
        stars,
        tops,
        unmatched,
        missing_from_search: catalog_len - (stars + tops),
        star_size: g.star_size(),
        top_size: g.top_size(),
        entries,
    })
}
