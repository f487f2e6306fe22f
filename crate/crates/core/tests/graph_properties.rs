use grassmann_lab::bitset::BitSet;
use grassmann_lab::cliques::{all_maximal_cliques_bruteforce, max_clique};
use grassmann_lab::config::Bounds;
use grassmann_lab::coreness::{
    alpha_exact, build_colouring_endomorphism, chi_exact, classify_endomorphism, omega_exact, EndoClass, Endomorphism,
};
use grassmann_lab::field::field_of_order;
use grassmann_lab::graph::{build_graph, GrassmannGraph};
use grassmann_lab::lemmas::dual_map;
use grassmann_lab::report::GraphDump;
use grassmann_lab::subspace::{enumerate_subspaces, subspace_count};
use num_bigint::BigInt;

fn graph(q: u64, n: usize, m: usize) -> GrassmannGraph {
    build_graph(&field_of_order(q).unwrap(), n, m, &Bounds::default()).unwrap()
}

const SMALL: [(u64, usize, usize); 7] = [(2, 3, 1), (2, 4, 2), (2, 5, 2), (3, 4, 2), (2, 5, 3), (4, 4, 2), (3, 3, 2)];

#[test]
fn vertex_counts_and_adjacency_agree() {
    for (q, n, m) in SMALL.into_iter().chain([(2, 6, 3)]) {
        let g = graph(q, n, m);
        assert_eq!(BigInt::from(g.vertex_count()), subspace_count(q, n, m));
        for x in 0..g.vertex_count() {
            for y in 0..g.vertex_count() {
                assert_eq!(g.adjacent(x, y), g.adjacent_by_rank(x, y), "J_{q}({n},{m}) pair {x},{y}");
            }
        }
    }
}

#[test]
fn distance_formula_matches_bfs() {
    for (q, n, m) in SMALL {
        let g = graph(q, n, m);
        for x in 0..g.vertex_count() {
            let bfs = g.bfs_distances(x);
            for (y, d) in bfs.iter().enumerate() {
                assert_eq!(Some(g.distance(x, y).unwrap()), *d, "J_{q}({n},{m}) pair {x},{y}");
            }
        }
    }
    let g = graph(2, 6, 3);
    for x in (0..g.vertex_count()).step_by(97) {
        let bfs = g.bfs_distances(x);
        for (y, d) in bfs.iter().enumerate() {
            assert_eq!(Some(g.distance(x, y).unwrap()), *d);
        }
    }
}

#[test]
fn regular_with_expected_degree() {
    for (q, n, m) in SMALL {
        let g = graph(q, n, m);
        // q [m,1] [n-m,1]
        let br = |k: u32| (q.pow(k) - 1) / (q - 1);
        let expect = (q * br(m as u32) * br((n - m) as u32)) as usize;
        assert!((0..g.vertex_count()).all(|v| g.degree(v) == expect), "J_{q}({n},{m})");
    }
}

#[test]
fn star_and_top_members_match_containment_scan() {
    for (q, n, m) in [(2, 4, 2), (2, 5, 2), (3, 4, 2)] {
        let g = graph(q, n, m);
        for s in g.star_catalog().unwrap() {
            let scan = (0..g.vertex_count()).filter(|&v| g.vertex(v).contains(&s.center).unwrap());
            assert_eq!(s.members, BitSet::from_iter_with_len(g.vertex_count(), scan));
            assert_eq!(s.members.count() as u64, g.star_size());
        }
        for t in g.top_catalog().unwrap() {
            let scan = (0..g.vertex_count()).filter(|&v| t.center.contains(g.vertex(v)).unwrap());
            assert_eq!(t.members, BitSet::from_iter_with_len(g.vertex_count(), scan));
            assert_eq!(t.members.count() as u64, g.top_size());
        }
        if n > 2 * m {
            assert!(g.star_size() > g.top_size());
        } else {
            assert_eq!(g.star_size(), g.top_size());
        }
    }
}

#[test]
fn omega_matches_formula() {
    for (q, n, m) in SMALL.into_iter().chain([(2, 6, 3)]) {
        let g = graph(q, n, m);
        let bounds = Bounds { search_nodes: 5_000_000, ..Bounds::default() };
        let (w, clique) = omega_exact(&g, &bounds).unwrap();
        assert_eq!(w as u64, g.omega_formula(), "J_{q}({n},{m})");
        assert!(g.is_clique(&clique));
    }
}

#[test]
fn clique_classification_on_small_graphs() {
    for (q, n, m) in [(2, 4, 2), (2, 5, 2), (3, 4, 2), (2, 5, 3)] {
        let census = all_maximal_cliques_bruteforce(&graph(q, n, m), &Bounds::default()).unwrap();
        assert!(census.classification_holds(), "J_{q}({n},{m})");
    }
}

#[test]
fn clique_chain_holds_where_alpha_is_exact() {
    let b = Bounds::default();
    for (q, n, m) in [(2, 4, 2), (2, 3, 1), (3, 3, 1), (3, 4, 2)] {
        let g = graph(q, n, m);
        let (w, clique) = omega_exact(&g, &b).unwrap();
        let alpha = alpha_exact(&g, &b);
        let Some(a) = alpha.bounds.exact else { continue };
        let chi = chi_exact(&g, &clique, a, None, &b).unwrap();
        let found = chi.bounds.upper.unwrap();
        let v = g.vertex_count() as u64;
        assert!(found >= v.div_ceil(a) && v.div_ceil(a) >= w as u64, "J_{q}({n},{m})");
        assert!(g
            .adjacency()
            .iter()
            .enumerate()
            .all(|(x, nb)| nb.iter().all(|y| chi.colouring[x] != chi.colouring[y])));
    }
}

#[test]
fn colouring_endomorphisms_classify_as_colourings() {
    let g = graph(2, 4, 2);
    let b = Bounds::default();
    let (_, clique) = omega_exact(&g, &b).unwrap();
    let chi = chi_exact(&g, &clique, 5, None, &b).unwrap();
    let centers = enumerate_subspaces(g.spec(), 4, 1, u64::MAX).unwrap();
    for c in &centers {
        let star = g.star(c).unwrap().members.to_vec();
        let e = build_colouring_endomorphism(&g, &chi.colouring, &star).unwrap();
        assert_eq!(classify_endomorphism(&g, &e).unwrap(), EndoClass::Colouring);
        assert_eq!(e.image(), star);
    }
}

#[test]
fn automorphism_inverses_are_endomorphisms() {
    for (q, n, m) in [(2, 4, 2), (3, 4, 2), (2, 6, 3)] {
        let g = graph(q, n, m);
        for map in [(0..g.vertex_count()).collect::<Vec<_>>(), dual_map(&g).unwrap()] {
            let e = Endomorphism { map: map.clone() };
            assert_eq!(classify_endomorphism(&g, &e).unwrap(), EndoClass::Automorphism);
            let mut inv = vec![0; map.len()];
            for (x, &y) in map.iter().enumerate() {
                inv[y] = x;
            }
            Endomorphism { map: inv }.validate(&g).unwrap();
        }
    }
}

#[test]
fn max_clique_on_complement_equals_alpha_oracle() {
    // J_2(3,1) is K_7: independent sets have size 1.
    let g = graph(2, 3, 1);
    let co = grassmann_lab::cliques::complement(g.adjacency());
    let s = max_clique(&co, &BitSet::full(7), None, u64::MAX);
    assert_eq!(s.best.len(), 1);
}

#[test]
fn json_dump_round_trips() {
    for (q, n, m) in SMALL {
        let g = graph(q, n, m);
        let text = serde_json::to_string(&GraphDump::from_graph(&g)).unwrap();
        let back: GraphDump = serde_json::from_str(&text).unwrap();
        let h = back.to_graph().unwrap();
        assert_eq!(h.adjacency(), g.adjacency());
        assert_eq!(h.vertices(), g.vertices());
    }
}
