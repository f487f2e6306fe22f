//! Exact omega / alpha / chi on small Grassmann graphs, endomorphism
//! validation and classification, and the core test: a graph whose clique
//! number equals its chromatic number retracts onto a maximum clique, and is
//! a core exactly when `chi > omega`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::cliques::{complement, max_clique};
use crate::colouring::{colour_count, dsatur, find_colouring, first_conflict, ColouringSearch};
use crate::config::Bounds;
use crate::cyclotomic::{gaussian_binomial_at, h_integrality, omega_at, Integrality};
use crate::error::{Error, Result};
use crate::field::field_of_order;
use crate::fixture::{verify_fixture_partition, Fixture, FixtureReport};
use crate::graph::{build_graph, GrassmannGraph};
use crate::numtheory::prime_power;
use crate::subspace::enumerate_subspaces;

fn check_brute(g: &GrassmannGraph, bounds: &Bounds) -> Result<()> {
    if g.vertex_count() > bounds.brute_bound {
        return Err(Error::BruteBoundExceeded { count: g.vertex_count(), bound: bounds.brute_bound });
    }
    Ok(())
}

/// Maximum clique by branch and bound, checked against the star/top formula.
/// Returns the clique number and a maximum clique.
pub fn omega_exact(g: &GrassmannGraph, bounds: &Bounds) -> Result<(usize, Vec<usize>)> {
    check_brute(g, bounds)?;
    let s = max_clique(g.adjacency(), &BitSet::full(g.vertex_count()), None, bounds.search_nodes);
    if !s.proven {
        return Err(Error::SearchBudgetExhausted { what: "maximum clique", budget: bounds.search_nodes });
    }
    let formula = g.omega_formula();
    if s.best.len() as u64 != formula {
        return Err(Error::Invariant(format!(
            "branch and bound found omega = {}, formula gives {formula}",
            s.best.len()
        )));
    }
    Ok((s.best.len(), s.best))
}

/// A value known exactly or only between bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bracket {
    pub lower: Option<u64>,
    pub upper: Option<u64>,
    pub exact: Option<u64>,
}

impl Bracket {
    fn new(lower: Option<u64>, upper: Option<u64>) -> Self {
        let exact = match (lower, upper) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        };
        Bracket { lower, upper, exact }
    }

    pub fn exactly(v: u64) -> Self {
        Bracket::new(Some(v), Some(v))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaResult {
    pub bounds: Bracket,
    /// Largest independent set found, sorted.
    pub witness: Vec<usize>,
}

/// Independence number as a maximum clique of the complement. The upper bound
/// `floor(|V| / omega)` holds on vertex-transitive graphs; when the graph is
/// too large or the budget runs out, a greedy independent set gives the lower
/// bound.
pub fn alpha_exact(g: &GrassmannGraph, bounds: &Bounds) -> AlphaResult {
    let v = g.vertex_count();
    let upper = (v as u64) / g.omega_formula();
    if v <= bounds.alpha_vertices.min(bounds.brute_bound) {
        let co = complement(g.adjacency());
        let s = max_clique(&co, &BitSet::full(v), Some(upper as usize), bounds.search_nodes);
        let found = s.best.len() as u64;
        let upper = if s.proven && found < upper { found } else { upper };
        return AlphaResult { bounds: Bracket::new(Some(found), Some(upper)), witness: s.best };
    }
    let mut free = BitSet::full(v);
    let mut witness = Vec::new();
    while let Some(x) = free.first() {
        witness.push(x);
        free.remove(x);
        free.difference_with(g.neighbours(x));
    }
    AlphaResult { bounds: Bracket::new(Some(witness.len() as u64), Some(upper)), witness }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChiResult {
    pub bounds: Bracket,
    /// Where the best colouring came from: "hint", "dsatur" or "search".
    pub source: &'static str,
    #[serde(skip)]
    pub colouring: Vec<usize>,
}

/// Chromatic number. Lower bound `max(omega, ceil(|V| / alpha_upper))`; upper
/// bound from `known` (if proper), DSATUR seeded with `clique`, then exact
/// k-colouring searches for each k below the best colouring.
pub fn chi_exact(
    g: &GrassmannGraph,
    clique: &[usize],
    alpha_upper: u64,
    known: Option<&[usize]>,
    bounds: &Bounds,
) -> Result<ChiResult> {
    let adj = g.adjacency();
    let v = g.vertex_count() as u64;
    let mut lower = (clique.len() as u64).max(v.div_ceil(alpha_upper.max(1)));
    let (mut colouring, mut source) = (dsatur(adj, clique), "dsatur");
    if let Some(hint) = known {
        if hint.len() != adj.len() {
            return Err(Error::DimensionMismatch(format!("colouring has {} entries for {v} vertices", hint.len())));
        }
        if let Some((a, b)) = first_conflict(adj, hint) {
            return Err(Error::ImproperColouring(a, b));
        }
        if colour_count(hint) <= colour_count(&colouring) {
            colouring = hint.to_vec();
            source = "hint";
        }
    }
    let mut upper = colour_count(&colouring) as u64;
    while lower < upper {
        match find_colouring(adj, lower as usize, clique, bounds.search_nodes) {
            ColouringSearch::Found(c) => {
                upper = colour_count(&c) as u64;
                colouring = c;
                source = "search";
            }
            ColouringSearch::Infeasible => lower += 1,
            ColouringSearch::BudgetExhausted => break,
        }
    }
    Ok(ChiResult { bounds: Bracket::new(Some(lower), Some(upper)), source, colouring })
}

/// A vertex map `V -> V`, by id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Endomorphism {
    pub map: Vec<usize>,
}

impl Endomorphism {
    pub fn identity(g: &GrassmannGraph) -> Self {
        Endomorphism { map: (0..g.vertex_count()).collect() }
    }

    /// Checks that the map is total and sends every edge to an edge.
    pub fn validate(&self, g: &GrassmannGraph) -> Result<()> {
        let v = g.vertex_count();
        if self.map.len() != v {
            return Err(Error::DimensionMismatch(format!("map has {} entries for {v} vertices", self.map.len())));
        }
        if let Some(&bad) = self.map.iter().find(|&&t| t >= v) {
            return Err(Error::DimensionMismatch(format!("image {bad} is not a vertex")));
        }
        match g.edges().find(|&(x, y)| !g.adjacent(self.map[x], self.map[y])) {
            Some((x, y)) => Err(Error::NotAnEndomorphism(x, y)),
            None => Ok(()),
        }
    }

    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EndoClass {
    Automorphism,
    Colouring,
    Other,
}

/// Validates `e`, then: a bijection preserving adjacency both ways is an
/// automorphism; a map onto a clique of size omega is a colouring.
pub fn classify_endomorphism(g: &GrassmannGraph, e: &Endomorphism) -> Result<EndoClass> {
    e.validate(g)?;
    let image = e.image();
    let v = g.vertex_count();
    if image.len() == v {
        let reflects = (0..v).all(|x| (x + 1..v).all(|y| g.adjacent(x, y) == g.adjacent(e.map[x], e.map[y])));
        if reflects {
            return Ok(EndoClass::Automorphism);
        }
    }
    if image.len() as u64 == g.omega_formula() && g.is_clique(&image) {
        return Ok(EndoClass::Colouring);
    }
    Ok(EndoClass::Other)
}

/// Sends each vertex of colour `i` to the clique vertex coloured `i`.
pub fn build_colouring_endomorphism(g: &GrassmannGraph, colouring: &[usize], clique: &[usize]) -> Result<Endomorphism> {
    if colouring.len() != g.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "colouring has {} entries for {} vertices",
            colouring.len(),
            g.vertex_count()
        )));
    }
    if let Some((a, b)) = first_conflict(g.adjacency(), colouring) {
        return Err(Error::ImproperColouring(a, b));
    }
    let k = colour_count(colouring);
    if !g.is_clique(clique) {
        return Err(Error::NotAClique(format!("{clique:?} contains a non-adjacent pair")));
    }
    if clique.len() != k {
        return Err(Error::NotAClique(format!("clique has {} vertices, colouring uses {k} colours", clique.len())));
    }
    // Clique vertices are pairwise adjacent, so their colours are distinct and
    // cover 0..k.
    let mut by_colour = vec![usize::MAX; k];
    for &x in clique {
        by_colour[colouring[x]] = x;
    }
    Ok(Endomorphism { map: colouring.iter().map(|&c| by_colour[c]).collect() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Params {
    pub q: u64,
    pub n: u32,
    pub m: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Core,
    NotCore,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub criterion: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub classification: EndoClass,
    /// Center of the star the graph is mapped onto.
    pub star_center: Vec<String>,
    pub image: Vec<usize>,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorenessReport {
    pub params: Params,
    pub vertices: u64,
    pub omega: u64,
    /// "formula" or "branch-and-bound".
    pub omega_source: &'static str,
    pub alpha: Bracket,
    pub chi: Bracket,
    pub verdict: Verdict,
    pub evidence: Vec<Evidence>,
    pub integrality: Option<Integrality>,
    pub witness: Option<Witness>,
    pub pseudo_core_note: Option<&'static str>,
    pub fixture: Option<FixtureReport>,
}

fn to_u64(v: BigInt, what: &str) -> Result<u64> {
    v.to_u64().ok_or_else(|| Error::InvalidParameters(format!("{what} {v} does not fit in 64 bits")))
}

/// Decides whether `J_q(n, m)` is a core, with default bounds and no fixture.
pub fn core_test(n: u32, m: u32, q: u64) -> Result<CorenessReport> {
    core_test_with(n, m, q, &Bounds::default(), None)
}

/// Cascade: non-integral `|V| / omega` means core; otherwise, on a small
/// enough graph, an omega-colouring gives a retraction onto a star (not a
/// core); a chromatic lower bound above omega means core; anything else is
/// undetermined.
pub fn core_test_with(n: u32, m: u32, q: u64, bounds: &Bounds, fixture: Option<&Fixture>) -> Result<CorenessReport> {
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    let params = Params { q, n, m };
    if m == 1 && n >= 2 {
        let v = to_u64(gaussian_binomial_at(n, 1, q), "vertex count")?;
        return Ok(CorenessReport {
            params,
            vertices: v,
            omega: v,
            omega_source: "formula",
            alpha: Bracket::exactly(1),
            chi: Bracket::exactly(v),
            verdict: Verdict::Core,
            evidence: vec![Evidence { criterion: "complete-graph", detail: format!("J_{q}({n},1) is K_{v}") }],
            integrality: None,
            witness: None,
            pseudo_core_note: None,
            fixture: None,
        });
    }
    let integrality = h_integrality(n, m, q)?;
    let v = to_u64(gaussian_binomial_at(n, m, q), "vertex count")?;
    let omega = to_u64(omega_at(n, m, q), "clique number")?;
    let alpha_upper = v / omega;
    let mut report = CorenessReport {
        params,
        vertices: v,
        omega,
        omega_source: "formula",
        alpha: Bracket::new(None, Some(alpha_upper)),
        chi: Bracket::new(Some(omega.max(v.div_ceil(alpha_upper))), None),
        verdict: Verdict::Undetermined,
        evidence: Vec::new(),
        integrality: None,
        witness: None,
        pseudo_core_note: None,
        fixture: None,
    };

    if !integrality.value.is_integer() {
        report.evidence.push(Evidence {
            criterion: "integrality",
            detail: format!("|V| / omega = {} is not an integer, so chi > omega", integrality.value),
        });
        report.integrality = Some(integrality);
        report.verdict = Verdict::Core;
        return Ok(report);
    }
    report.evidence.push(Evidence {
        criterion: "integrality",
        detail: format!("|V| / omega = {} is an integer; no conclusion", integrality.value),
    });
    report.integrality = Some(integrality);

    let small = v as usize <= bounds.brute_bound && v <= bounds.max_vertices && q <= bounds.max_graph_q as u64;
    if small {
        let spec = field_of_order(q)?;
        let g = build_graph(&spec, n as usize, m as usize, bounds)?;
        let (omega_bb, clique) = omega_exact(&g, bounds)?;
        report.omega_source = "branch-and-bound";
        let alpha = alpha_exact(&g, bounds);
        report.alpha = alpha.bounds.clone();
        let alpha_upper = alpha.bounds.upper.expect("upper bound always set");

        let hint = match fixture {
            Some(fx) => {
                let fr = verify_fixture_partition(&g, fx)?;
                report.evidence.push(Evidence {
                    criterion: "fixture",
                    detail: if fr.passed() {
                        format!("fixture partition is a proper {}-colouring", fr.classes)
                    } else {
                        format!("fixture rejected with {} violations", fr.violations.len())
                    },
                });
                let hint = fr.colouring.clone();
                report.fixture = Some(fr);
                hint
            }
            None => None,
        };
        let chi = chi_exact(&g, &clique, alpha_upper, hint.as_deref(), bounds)?;
        report.chi = chi.bounds.clone();

        if chi.bounds.upper == Some(omega_bb as u64) {
            let center = enumerate_subspaces(&spec, n as usize, m as usize - 1, bounds.max_subspaces)?
                .into_iter()
                .next()
                .expect("at least one subspace");
            let star = g.star(&center)?;
            let e = build_colouring_endomorphism(&g, &chi.colouring, &star.members.to_vec())?;
            let classification = classify_endomorphism(&g, &e)?;
            report.evidence.push(Evidence {
                criterion: "omega-colouring",
                detail: format!("{} colouring with {omega_bb} colours retracts onto the star of {center}", chi.source),
            });
            report.witness =
                Some(Witness { classification, star_center: center.digit_rows(), image: e.image(), map: e.map });
            report.pseudo_core_note = Some(
                "every endomorphism of a Grassmann graph is an automorphism or a colouring; this one is a colouring",
            );
            report.verdict = Verdict::NotCore;
            return Ok(report);
        }
    } else {
        report.evidence.push(Evidence {
            criterion: "size",
            detail: format!("{v} vertices exceed the exhaustive-search bounds; using formula bounds only"),
        });
    }

    let chi_lower = report.chi.lower.expect("lower bound always set");
    if chi_lower > omega {
        report
            .evidence
            .push(Evidence { criterion: "chi-lower-bound", detail: format!("chi >= {chi_lower} > omega = {omega}") });
        report.verdict = Verdict::Core;
    } else {
        report.evidence.push(Evidence {
            criterion: "open",
            detail: format!("chi lies in [{chi_lower}, {}]", report.chi.upper.map_or("?".into(), |u| u.to_string())),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lemmas::dual_map;

    fn j242() -> GrassmannGraph {
        build_graph(&field_of_order(2).unwrap(), 4, 2, &Bounds::default()).unwrap()
    }

    #[test]
    fn omega_alpha_chi_on_j242() {
        let g = j242();
        let b = Bounds::default();
        let (w, clique) = omega_exact(&g, &b).unwrap();
        assert_eq!(w, 7);
        let a = alpha_exact(&g, &b);
        assert_eq!(a.bounds.exact, Some(5));
        let chi = chi_exact(&g, &clique, 5, None, &b).unwrap();
        assert_eq!(chi.bounds.exact, Some(7));
        assert!(first_conflict(g.adjacency(), &chi.colouring).is_none());
    }

    #[test]
    fn complete_graph_values() {
        let g = build_graph(&field_of_order(3).unwrap(), 3, 1, &Bounds::default()).unwrap();
        let b = Bounds::default();
        let (w, clique) = omega_exact(&g, &b).unwrap();
        assert_eq!(w, 13);
        assert_eq!(alpha_exact(&g, &b).bounds.exact, Some(1));
        assert_eq!(chi_exact(&g, &clique, 1, None, &b).unwrap().bounds.exact, Some(13));
        let colouring: Vec<usize> = (0..13).collect();
        let e = build_colouring_endomorphism(&g, &colouring, &clique).unwrap();
        assert_eq!(classify_endomorphism(&g, &e).unwrap(), EndoClass::Automorphism);
    }

    #[test]
    fn classification() {
        let g = j242();
        assert_eq!(classify_endomorphism(&g, &Endomorphism::identity(&g)).unwrap(), EndoClass::Automorphism);
        let dual = Endomorphism { map: dual_map(&g).unwrap() };
        assert_eq!(classify_endomorphism(&g, &dual).unwrap(), EndoClass::Automorphism);
        let constant = Endomorphism { map: vec![0; 35] };
        assert!(matches!(classify_endomorphism(&g, &constant), Err(Error::NotAnEndomorphism(_, _))));
        assert!(Error::NotAnEndomorphism(0, 1).to_string().starts_with("not an endomorphism"));
    }

    #[test]
    fn colouring_endomorphism_errors() {
        let g = j242();
        let zeros = vec![0; 35];
        assert!(matches!(build_colouring_endomorphism(&g, &zeros, &[0]), Err(Error::ImproperColouring(_, _))));
        let fr = verify_fixture_partition(&g, &Fixture::default_fixture()).unwrap();
        let colouring = fr.colouring.unwrap();
        let non_clique: Vec<usize> = (0..7).collect();
        if !g.is_clique(&non_clique) {
            assert!(matches!(build_colouring_endomorphism(&g, &colouring, &non_clique), Err(Error::NotAClique(_))));
        }
    }

    #[test]
    fn core_test_cases() {
        let r = core_test(4, 2, 2).unwrap();
        assert_eq!(r.verdict, Verdict::NotCore);
        assert_eq!(r.witness.as_ref().unwrap().classification, EndoClass::Colouring);
        let r = core_test(5, 2, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Core);
        assert_eq!(r.integrality.unwrap().value.to_string(), "31/3");
        assert_eq!(core_test(5, 2, 3).unwrap().integrality.unwrap().value.to_string(), "121/4");
        assert_eq!(core_test(3, 1, 2).unwrap().verdict, Verdict::Core);
        assert_eq!(core_test(4, 2, 6).unwrap_err(), Error::NotPrimePower(6));
        assert!(matches!(core_test(5, 3, 2), Err(Error::InvalidParameters(_))));
    }
}
