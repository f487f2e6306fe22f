//! Vertex colouring: clique-seeded DSATUR and an exact k-colouring search
//! (DSATUR-ordered backtracking) under a node budget.

use crate::bitset::BitSet;

/// Colour of each vertex, `0..k`.
pub type Colouring = Vec<usize>;

/// `Some((u, v))` for the first monochromatic edge.
pub fn first_conflict(adj: &[BitSet], colours: &[usize]) -> Option<(usize, usize)> {
    adj.iter().enumerate().find_map(|(u, nb)| nb.iter().find(|&v| v > u && colours[u] == colours[v]).map(|v| (u, v)))
}

pub fn colour_count(colours: &[usize]) -> usize {
    colours.iter().max().map_or(0, |&c| c + 1)
}

struct Saturation {
    /// `count[v * k + c]`: neighbours of v currently coloured c.
    count: Vec<u32>,
    /// Number of distinct colours among v's neighbours.
    distinct: Vec<usize>,
    degree: Vec<usize>,
    k: usize,
}

impl Saturation {
    fn new(adj: &[BitSet], k: usize) -> Self {
        let n = adj.len();
        Saturation { count: vec![0; n * k], distinct: vec![0; n], degree: adj.iter().map(BitSet::count).collect(), k }
    }

    fn assign(&mut self, adj: &[BitSet], v: usize, c: usize) {
        for w in adj[v].iter() {
            let slot = &mut self.count[w * self.k + c];
            if *slot == 0 {
                self.distinct[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, adj: &[BitSet], v: usize, c: usize) {
        for w in adj[v].iter() {
            let slot = &mut self.count[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.distinct[w] -= 1;
            }
        }
    }

    fn blocked(&self, v: usize, c: usize) -> bool {
        self.count[v * self.k + c] > 0
    }
}

/// Uncoloured vertex with maximal saturation, then maximal degree, then
/// smallest id.
fn pick(colours: &[Option<usize>], sat: &Saturation) -> Option<usize> {
    (0..colours.len())
        .filter(|&v| colours[v].is_none())
        .max_by_key(|&v| (sat.distinct[v], sat.degree[v], std::cmp::Reverse(v)))
}

/// Greedy DSATUR; the vertices of `seed` (a clique) get colours `0, 1, ...`
/// in the given order.
pub fn dsatur(adj: &[BitSet], seed: &[usize]) -> Colouring {
    let n = adj.len();
    let k = n.max(1);
    let mut sat = Saturation::new(adj, k);
    let mut colours: Vec<Option<usize>> = vec![None; n];
    for (c, &v) in seed.iter().enumerate() {
        colours[v] = Some(c);
        sat.assign(adj, v, c);
    }
    while let Some(v) = pick(&colours, &sat) {
        let c = (0..k).find(|&c| !sat.blocked(v, c)).expect("n colours always suffice");
        colours[v] = Some(c);
        sat.assign(adj, v, c);
    }
    colours.into_iter().map(|c| c.expect("all coloured")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColouringSearch {
    Found(Colouring),
    /// Exhaustive search proved no proper k-colouring exists.
    Infeasible,
    BudgetExhausted,
}

struct Backtrack<'a> {
    adj: &'a [BitSet],
    k: usize,
    colours: Vec<Option<usize>>,
    sat: Saturation,
    nodes: u64,
    budget: u64,
}

impl Backtrack<'_> {
    /// `Some(true)` found, `Some(false)` exhausted subtree, `None` budget hit.
    /// Colours `0..used` appear somewhere already; higher colours are
    /// interchangeable, so only colour `used` is tried among them.
    fn search(&mut self, uncoloured: usize, used: usize) -> Option<bool> {
        if uncoloured == 0 {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let v = pick(&self.colours, &self.sat).expect("uncoloured vertex exists");
        if self.sat.distinct[v] >= self.k {
            return Some(false);
        }
        for c in 0..self.k.min(used + 1) {
            if self.sat.blocked(v, c) {
                continue;
            }
            self.colours[v] = Some(c);
            self.sat.assign(self.adj, v, c);
            let r = self.search(uncoloured - 1, used.max(c + 1));
            self.sat.unassign(self.adj, v, c);
            self.colours[v] = None;
            match r {
                Some(false) => continue,
                other => {
                    if other == Some(true) {
                        self.colours[v] = Some(c);
                    }
                    return other;
                }
            }
        }
        Some(false)
    }
}

/// Searches for a proper `k`-colouring. `seed` must be a clique; its vertices
/// are fixed to colours `0, 1, ...`, which loses no generality.
pub fn find_colouring(adj: &[BitSet], k: usize, seed: &[usize], budget: u64) -> ColouringSearch {
    let n = adj.len();
    if seed.len() > k {
        return ColouringSearch::Infeasible;
    }
    if k == 0 {
        return if n == 0 { ColouringSearch::Found(Vec::new()) } else { ColouringSearch::Infeasible };
    }
    let mut bt = Backtrack { adj, k, colours: vec![None; n], sat: Saturation::new(adj, k), nodes: 0, budget };
    for (c, &v) in seed.iter().enumerate() {
        bt.colours[v] = Some(c);
        bt.sat.assign(adj, v, c);
    }
    // A successful search leaves its assignment in place.
    match bt.search(n - seed.len(), seed.len()) {
        Some(true) => ColouringSearch::Found(bt.colours.into_iter().map(|c| c.expect("coloured")).collect()),
        Some(false) => ColouringSearch::Infeasible,
        None => ColouringSearch::BudgetExhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Vec<BitSet> {
        let mut adj = vec![BitSet::new(n); n];
        for i in 0..n {
            let j = (i + 1) % n;
            adj[i].insert(j);
            adj[j].insert(i);
        }
        adj
    }

    #[test]
    fn odd_cycle_needs_three() {
        let adj = cycle(5);
        assert_eq!(find_colouring(&adj, 2, &[0, 1], 1000), ColouringSearch::Infeasible);
        match find_colouring(&adj, 3, &[0, 1], 1000) {
            ColouringSearch::Found(c) => {
                assert!(first_conflict(&adj, &c).is_none());
                assert_eq!(colour_count(&c), 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dsatur_is_proper() {
        let adj = cycle(7);
        let c = dsatur(&adj, &[]);
        assert!(first_conflict(&adj, &c).is_none());
        assert!(colour_count(&c) <= 3);
    }

    #[test]
    fn complete_graph() {
        let n = 5;
        let adj: Vec<BitSet> = (0..n).map(|v| BitSet::from_iter_with_len(n, (0..n).filter(|&w| w != v))).collect();
        let seed: Vec<usize> = (0..n).collect();
        assert_eq!(find_colouring(&adj, 4, &seed, 100), ColouringSearch::Infeasible);
        assert_eq!(find_colouring(&adj, 5, &seed, 100), ColouringSearch::Found(seed.clone()));
    }
}
