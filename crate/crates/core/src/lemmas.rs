//! Exhaustive checks of the intersection structure of stars and tops, and of
//! the duality map `W -> W^⊥` on `J_q(2m, m)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::graph::{GrassmannGraph, MaximalClique};

/// Counterexamples kept per check.
const MAX_COUNTEREXAMPLES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Counterexample {
    pub first: String,
    pub second: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaCheck {
    pub passed: bool,
    pub pairs_checked: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl LemmaCheck {
    fn from_results(pairs_checked: u64, mut bad: Vec<Counterexample>) -> Self {
        bad.sort();
        let counterexample_count = bad.len() as u64;
        bad.truncate(MAX_COUNTEREXAMPLES);
        LemmaCheck { passed: counterexample_count == 0, pairs_checked, counterexample_count, counterexamples: bad }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    /// Expected size of an incident star ∩ top.
    pub q_plus_one: u64,
    pub stars: usize,
    pub tops: usize,
    /// A star and a top meet in exactly q+1 vertices when the star's center
    /// lies in the top's center, and not at all otherwise.
    pub star_top_intersection: LemmaCheck,
    /// Distinct stars, and distinct tops, share at most one vertex.
    pub same_kind_overlap: LemmaCheck,
    /// Distinct stars `[A>`, `[B>` meet iff `dim(A ∩ B) = m - 2`, and then in `{A ∨ B}`.
    pub star_meet: LemmaCheck,
    /// Distinct tops `<P]`, `<Q]` meet iff `dim(P ∩ Q) = m`, and then in `{P ∩ Q}`.
    pub top_meet: LemmaCheck,
}

impl LemmaReport {
    pub fn all_passed(&self) -> bool {
        self.star_top_intersection.passed
            && self.same_kind_overlap.passed
            && self.star_meet.passed
            && self.top_meet.passed
    }
}

fn for_pairs<F>(a: &[MaximalClique], b: &[MaximalClique], distinct_only: bool, check: F) -> (u64, Vec<Counterexample>)
where
    F: Fn(&MaximalClique, &MaximalClique) -> Option<String> + Sync,
{
    let per_row: Vec<(u64, Vec<Counterexample>)> = (0..a.len())
        .into_par_iter()
        .map(|i| {
            let start = if distinct_only { i + 1 } else { 0 };
            let mut bad = Vec::new();
            let mut checked = 0;
            for y in &b[start..] {
                checked += 1;
                if let Some(detail) = check(&a[i], y) {
                    bad.push(Counterexample { first: a[i].center.to_string(), second: y.center.to_string(), detail });
                }
            }
            (checked, bad)
        })
        .collect();
    let checked = per_row.iter().map(|r| r.0).sum();
    (checked, per_row.into_iter().flat_map(|r| r.1).collect())
}

/// Checks every star/top pair of `g`.
pub fn verify_clique_lemmas(g: &GrassmannGraph, bounds: &Bounds) -> Result<LemmaReport> {
    if g.vertex_count() > bounds.brute_bound {
        return Err(Error::BruteBoundExceeded { count: g.vertex_count(), bound: bounds.brute_bound });
    }
    let m = g.m();
    let q_plus_one = g.q() as u64 + 1;
    let stars = g.star_catalog()?;
    let tops = g.top_catalog()?;

    let (n1, bad1) = for_pairs(&stars, &tops, false, |s, t| {
        let meet = s.members.intersection_count(&t.members) as u64;
        let incident = t.center.contains(&s.center).expect("same ambient");
        let expected = if incident { q_plus_one } else { 0 };
        (meet != expected).then(|| format!("|star ∩ top| = {meet}, expected {expected}"))
    });

    let overlap = |a: &MaximalClique, b: &MaximalClique| {
        let meet = a.members.intersection_count(&b.members);
        (meet > 1).then(|| format!("distinct cliques share {meet} vertices"))
    };
    let (n2a, mut bad2) = for_pairs(&stars, &stars, true, overlap);
    let (n2b, bad2b) = for_pairs(&tops, &tops, true, overlap);
    bad2.extend(bad2b);

    let (n3, bad3) = for_pairs(&stars, &stars, true, |a, b| {
        let meet = a.members.intersection(&b.members);
        let dim = a.center.intersection_dim(&b.center).expect("same ambient");
        let should_meet = dim + 2 == m;
        if meet.is_empty() != !should_meet {
            return Some(format!("dim(A ∩ B) = {dim} but |meet| = {}", meet.count()));
        }
        if should_meet {
            let join = a.center.join(&b.center).expect("same ambient");
            if meet.to_vec() != g.id_of(&join).into_iter().collect::<Vec<_>>() {
                return Some(format!("meet {:?} is not {{A ∨ B}} = {{{join}}}", meet.to_vec()));
            }
        }
        None
    });

    let (n4, bad4) = for_pairs(&tops, &tops, true, |a, b| {
        let meet = a.members.intersection(&b.members);
        let common = a.center.intersect(&b.center).expect("same ambient");
        let should_meet = common.dim() == m;
        if meet.is_empty() != !should_meet {
            return Some(format!("dim(P ∩ Q) = {} but |meet| = {}", common.dim(), meet.count()));
        }
        if should_meet && meet.to_vec() != g.id_of(&common).into_iter().collect::<Vec<_>>() {
            return Some(format!("meet {:?} is not {{P ∩ Q}} = {{{common}}}", meet.to_vec()));
        }
        None
    });

    Ok(LemmaReport {
        q_plus_one,
        stars: stars.len(),
        tops: tops.len(),
        star_top_intersection: LemmaCheck::from_results(n1, bad1),
        same_kind_overlap: LemmaCheck::from_results(n2a + n2b, bad2),
        star_meet: LemmaCheck::from_results(n3, bad3),
        top_meet: LemmaCheck::from_results(n4, bad4),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DualReport {
    pub bijective: bool,
    pub involutive: bool,
    pub preserves_adjacency: bool,
    pub stars_to_tops: bool,
    pub tops_to_stars: bool,
    pub pairs_checked: u64,
    /// `map[v]` is the id of `vertex(v)^⊥`.
    #[serde(skip)]
    pub map: Vec<usize>,
}

impl DualReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.involutive && self.preserves_adjacency && self.stars_to_tops && self.tops_to_stars
    }
}

/// The vertex map `A -> A^⊥`; requires `n = 2m` so that the image is a vertex.
pub fn dual_map(g: &GrassmannGraph) -> Result<Vec<usize>> {
    if g.n() != 2 * g.m() {
        return Err(Error::DualityRequiresHalf);
    }
    g.vertices()
        .iter()
        .map(|v| g.id_of(&v.dual_complement()).ok_or_else(|| Error::Invariant(format!("dual of {v} is not a vertex"))))
        .collect()
}

pub fn dual_map_check(g: &GrassmannGraph) -> Result<DualReport> {
    let map = dual_map(g)?;
    let v = g.vertex_count();
    let mut seen = vec![false; v];
    for &t in &map {
        seen[t] = true;
    }
    let bijective = seen.iter().all(|&s| s);
    let involutive = (0..v).all(|x| map[map[x]] == x);
    let preserves_adjacency =
        (0..v).into_par_iter().all(|x| (x + 1..v).all(|y| g.adjacent(x, y) == g.adjacent(map[x], map[y])));
    let pairs_checked = (v * v.saturating_sub(1) / 2) as u64;

    let image = |c: &MaximalClique| {
        let mut out = crate::bitset::BitSet::new(v);
        for x in c.members.iter() {
            out.insert(map[x]);
        }
        out
    };
    let stars = g.star_catalog()?;
    let tops = g.top_catalog()?;
    let mut stars_to_tops = true;
    for s in &stars {
        let target = g.top(&s.center.dual_complement())?;
        stars_to_tops &= image(s) == target.members;
    }
    let mut tops_to_stars = true;
    for t in &tops {
        let target = g.star(&t.center.dual_complement())?;
        tops_to_stars &= image(t) == target.members;
    }
    Ok(DualReport { bijective, involutive, preserves_adjacency, stars_to_tops, tops_to_stars, pairs_checked, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_of_order;
    use crate::graph::build_graph;

    #[test]
    fn lemmas_hold_on_j2_4_2() {
        let g = build_graph(&field_of_order(2).unwrap(), 4, 2, &Bounds::default()).unwrap();
        let r = verify_clique_lemmas(&g, &Bounds::default()).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert_eq!(r.q_plus_one, 3);
        assert_eq!((r.stars, r.tops), (15, 15));
    }

    #[test]
    fn duality_needs_half_dimension() {
        let g = build_graph(&field_of_order(2).unwrap(), 5, 2, &Bounds::default()).unwrap();
        assert_eq!(dual_map_check(&g).unwrap_err(), Error::DualityRequiresHalf);
        assert_eq!(Error::DualityRequiresHalf.to_string(), "duality requires n = 2m");
    }

    #[test]
    fn brute_bound_enforced() {
        let g = build_graph(&field_of_order(2).unwrap(), 4, 2, &Bounds::default()).unwrap();
        let tight = Bounds { brute_bound: 10, ..Bounds::default() };
        assert!(matches!(verify_clique_lemmas(&g, &tight), Err(Error::BruteBoundExceeded { .. })));
    }
}
